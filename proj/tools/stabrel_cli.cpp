#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "stabrel/diag.hpp"
#include "stabrel/qec.hpp"

using namespace stabrel;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, no = 1, usage = 2, bad_input = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}


Diagram load_diagram(const std::string& path, std::optional<Prime> p) {
  try {
    return parse_file(path, p);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <class F>
auto with_file(const std::string& path, F f) {
  try {
    return f(slurp(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

Vec x_part(const Vec& e, std::size_t n) { return Vec(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()); }

std::string op_text(const SympOp& op) {
  std::ostringstream os;
  switch (op.kind) {
    case SympOp::Kind::fourier: os << "fourier " << op.a; break;
    case SympOp::Kind::controlled_add: os << "controlled_add " << op.a << " " << op.b << " " << op.weight; break;
    case SympOp::Kind::shear: os << "shear " << op.a << " " << op.weight; break;
    case SympOp::Kind::pair_shear: os << "pair_shear " << op.a << " " << op.b << " " << op.weight; break;
  }
  return os.str();
}

std::string wire_list(const std::vector<std::size_t>& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i];
  return os.str();
}

int cmd_eval(const std::string& file, const std::string& mode, std::optional<Prime> p) {
  Diagram d = load_diagram(file, p);
  GradedRelation r = evaluate(d);
  std::cout << (mode == "basis" ? render_basis(r, d.layer) : render_equations(r, d.layer));
  return ok;
}

int cmd_compare(const std::string& a, const std::string& b, bool subset_only, std::optional<Prime> p) {
  Diagram da = load_diagram(a, p), db = load_diagram(b, p);
  bool holds;
  try {
    holds = subset_only ? diagrams_subset(da, db) : diagrams_equal(da, db);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (subset_only)
    std::cout << (holds ? "SUBSET: yes" : "SUBSET: no") << "\n";
  else
    std::cout << (holds ? "EQUAL: yes" : "EQUAL: no") << "\n";
  return holds ? ok : no;
}

int cmd_classify(const std::string& file, std::optional<Prime> p) {
  auto s = with_file(file, [&](const std::string& t) { return parse_subspace(t, p); });
  std::cout << to_string(classify(s.subspace)) << "\n";
  return ok;
}

int cmd_dilate(const std::string& file, const std::string& out, std::optional<Prime> p) {
  auto s = with_file(file, [&](const std::string& t) { return parse_subspace(t, p); });
  SympClass c = classify(s.subspace);
  if (c != SympClass::coisotropic && c != SympClass::lagrangian)
    throw InputError(file + ": subspace is " + to_string(c) + ", not coisotropic");
  Dilation d = stinespring_dilate(s.subspace);
  const std::size_t m = d.logical_wires.size();
  const GradedRelation& e = d.encoder;
  bool isometry = compose(e, dagger(e)) == identity(s.p, quantum_wires(m));
  bool image_eq = image(e) == unbend(s.subspace, 0);

  std::ostringstream os;
  os << "p=" << s.p.value() << "\n";
  os << "n=" << s.n << "\n";
  os << "k=" << m << "\n";
  os << "logical: " << wire_list(d.logical_wires) << "\n";
  os << "ancillas: " << wire_list(d.ancilla_wires) << "\n";
  os << "ops:\n";
  for (const auto& op : d.ops) os << "  " << op_text(op) << "\n";
  os << "syndrome basis:\n";
  for (const auto& b : d.syndrome_basis) os << "  " << format_symplectic(b) << "\n";
  os << "encoder:\n";
  std::istringstream eq(render_equations(e, Layer::doubled));
  for (std::string line; std::getline(eq, line);) os << "  " << line << "\n";
  os << "encoder classification: " << to_string(classify(e)) << "\n";
  os << "isometry: " << yes_no(isometry) << "\n";
  os << "image equals input: " << yes_no(image_eq) << "\n";

  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << os.str();
  std::cout << "wrote " << out << "\n";
  std::cout << "isometry: " << yes_no(isometry) << "\n";
  std::cout << "image equals input: " << yes_no(image_eq) << "\n";
  return isometry && image_eq ? ok : no;
}

StabilizerCode load_code(const std::string& file, std::optional<Prime> p) {
  return with_file(file, [&](const std::string& t) { return build_code(parse_code(t, p)); });
}

int cmd_syndrome(const std::string& code_file, const std::string& error, std::optional<Prime> p) {
  StabilizerCode code = load_code(code_file, p);
  Vec e;
  try {
    e = parse_symplectic(code.p, code.n, error);
  } catch (const std::exception& ex) {
    throw InputError(std::string("error vector: ") + ex.what());
  }
  Vec d = syndrome(code, e);
  std::cout << format_symplectic(e) << "->" << format_tuple(d) << "\n";
  std::cout << "undetectable: " << yes_no(undetectable(code, e)) << "\n";
  return ok;
}

void print_report(const Report& rep) {
  for (const auto& b : rep.branches) {
    std::cout << format_symplectic(b.error) << " syndrome " << format_tuple(b.syndrome) << ": "
              << (b.pass ? "corrected" : "FAILED");
    if (!b.pass) std::cout << " (" << b.reason << ")";
    std::cout << "\n";
  }
}

int cmd_verify(const std::string& code_file, const std::string& table_file, const std::string& errors_file,
               std::optional<Prime> p) {
  StabilizerCode code = load_code(code_file, p);
  auto table =
      with_file(table_file, [&](const std::string& t) { return parse_table(code.p, code.n, code.syndrome_size(), t); });
  auto errors = with_file(errors_file, [&](const std::string& t) { return parse_errors(code.p, code.n, t); });
  Report rep = verify_correction(code, errors, table);
  print_report(rep);
  std::cout << "CORRECTS: " << yes_no(rep.all_pass()) << "\n";
  return rep.all_pass() ? ok : no;
}

int demo_teleport(const fs::path& dir, std::optional<Prime> p) {
  Diagram d = load_diagram((dir / "teleportation.diag").string(), p);
  GradedRelation r = evaluate(d);
  bool id = r == identity(d.p, quantum_wires(1));
  std::cout << "p=" << d.p.value() << "\n" << render_equations(r, d.layer);
  std::cout << "IDENTITY: " << yes_no(id) << "\n";
  return id ? ok : no;
}

int demo_repetition(const fs::path& dir, std::optional<Prime> p) {
  const std::string code_file = (dir / "repetition3.code").string();
  StabilizerCode code = load_code(code_file, p);
  if (code.n != 3 || code.syndrome_size() != 2) throw InputError(code_file + ": expected n=3, k=1");
  auto read_errors = [&](const char* name) {
    return with_file((dir / name).string(), [&](const std::string& t) { return parse_errors(code.p, code.n, t); });
  };
  auto table = with_file((dir / "repetition3.table").string(),
                         [&](const std::string& t) { return parse_table(code.p, code.n, 2, t); });

  // The published syndrome table, row by row.
  const std::vector<std::pair<Vec, Vec>> expected{
      {{1, 0, 0}, {1, 1}}, {{0, 1, 0}, {1, 0}}, {{0, 0, 1}, {0, 1}}, {{0, 0, 0}, {0, 0}}};
  bool rows_ok = true;
  for (const auto& [x, want] : expected) {
    Vec e(3, 0);
    e.insert(e.end(), x.begin(), x.end());
    Vec d = syndrome(code, e);
    rows_ok = rows_ok && d == want;
    std::cout << format_tuple(x) << "->" << format_tuple(d) << "\n";
  }
  std::cout << "SYNDROMES MATCH: " << yes_no(rows_ok) << "\n";

  Report w1 = verify_correction(code, read_errors("repetition3_weight1.errors"), table);
  bool w1_ok = !w1.branches.empty() && w1.all_pass();
  std::cout << "CORRECTS weight<=1 X: " << yes_no(w1_ok) << "\n";

  Report w2 = verify_correction(code, read_errors("repetition3_weight2.errors"), table);
  bool w2_fails = false;
  for (const auto& b : w2.branches) {
    if (b.pass) continue;
    if (!w2_fails) std::cout << "uncorrected weight-2 X: " << format_tuple(x_part(b.error, 3)) << "\n";
    w2_fails = true;
  }
  std::cout << "CORRECTS weight-2 X: " << yes_no(!w2_fails) << "\n";
  return rows_ok && w1_ok && w2_fails ? ok : no;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilizer circuits as affine relations"};
  app.require_subcommand(1);
  long long prime = 0;
  std::string fixtures_dir = STABREL_FIXTURES_DIR;
  app.add_option("--p", prime, "Prime overriding the file header");
  app.add_option("--fixtures-dir", fixtures_dir, "Fixture directory used by demos");

  std::string print_mode = "equations", f1, f2, f3, error;

  auto* eval = app.add_subcommand("eval", "Evaluate a diagram");
  eval->add_option("file", f1)->required();
  eval->add_option("--print", print_mode)->check(CLI::IsMember({"equations", "basis"}));

  auto* equal = app.add_subcommand("equal", "Do two diagrams denote the same relation");
  equal->add_option("a", f1)->required();
  equal->add_option("b", f2)->required();

  auto* subset = app.add_subcommand("subset", "Is the first relation contained in the second");
  subset->add_option("a", f1)->required();
  subset->add_option("b", f2)->required();

  auto* cls = app.add_subcommand("classify", "Classify a subspace file");
  cls->add_option("file", f1)->required();

  auto* dilate = app.add_subcommand("dilate", "Dilate a coisotropic subspace to an isometry");
  dilate->add_option("file", f1)->required();
  dilate->add_option("out", f2)->required();

  auto* syn = app.add_subcommand("syndrome", "Syndrome of an error on a code");
  syn->add_option("code", f1)->required();
  syn->add_option("error", error, "z-part | x-part")->required();

  auto* verify = app.add_subcommand("verify", "Check a correction table against a set of errors");
  verify->add_option("code", f1)->required();
  verify->add_option("table", f2)->required();
  verify->add_option("errors", f3)->required();

  auto* demo = app.add_subcommand("demo", "Reproduce a worked example");
  demo->add_option("name", f1)->required()->check(CLI::IsMember({"teleport", "repetition3"}));

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--p", prime, "Prime overriding the file header");
    sub->add_option("--fixtures-dir", fixtures_dir, "Fixture directory used by demos");
  }

  try {
    app.parse(argc, argv);
    if (prime != 0 && (prime < 2 || !is_prime(static_cast<std::uint64_t>(prime))))
      throw CLI::ValidationError("--p", std::to_string(prime) + " is not prime");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    auto p = prime ? std::optional<Prime>(Prime(static_cast<Elem>(prime))) : std::nullopt;
    if (*eval) return cmd_eval(f1, print_mode, p);
    if (*equal) return cmd_compare(f1, f2, false, p);
    if (*subset) return cmd_compare(f1, f2, true, p);
    if (*cls) return cmd_classify(f1, p);
    if (*dilate) return cmd_dilate(f1, f2, p);
    if (*syn) return cmd_syndrome(f1, error, p);
    if (*verify) return cmd_verify(f1, f2, f3, p);
    if (*demo) return f1 == "teleport" ? demo_teleport(fixtures_dir, p) : demo_repetition(fixtures_dir, p);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  }
  return usage;
}
