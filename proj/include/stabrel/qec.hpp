#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabrel/dilation.hpp"

namespace stabrel {

struct StabilizerCode {
  Prime p;
  std::size_t n;
  std::size_t k;
  GradedSubspace subspace;
  Dilation dilation;

  const GradedRelation& encoder() const { return dilation.encoder; }
  const std::vector<Vec>& syndrome_basis() const { return dilation.syndrome_basis; }
  std::size_t syndrome_size() const { return n - k; }
};

StabilizerCode code_from_subspace(const GradedSubspace& s);
// Generators b_i of L^omega with phases phi_i: S = {v : omega(b_i, v) = phi_i}.
StabilizerCode code_from_generators(Prime p, std::size_t n, const std::vector<Vec>& gens, const Vec& phases);

// n quantum -> n quantum (x) (n-k) classical: decode, read each ancilla in Z, re-prepare, re-encode.
GradedRelation measurement_circuit(const StabilizerCode& code);
// Classical outcome of the measurement circuit on the encoded state hit by W(e).
Vec syndrome(const StabilizerCode& code, const Vec& e);
// d_i = omega(b_i, e).
Vec symplectic_syndrome(const StabilizerCode& code, const Vec& e);
bool undetectable(const StabilizerCode& code, const Vec& e);
// e lies in the linear part L of the code space.
bool in_code_space(const StabilizerCode& code, const Vec& e);

// f(d) = m d + shift, with m of size 2n x (n-k).
struct AffineMap {
  FpMatrix m;
  Vec shift;
  Vec operator()(const Vec& d) const;
};

struct CorrectionTable {
  std::map<Vec, Vec> entries;
};

// The affine map agreeing with every entry, if there is one.
std::optional<AffineMap> affine_fit(Prime p, std::size_t n, std::size_t r, const CorrectionTable& t);

struct BranchResult {
  Vec error;
  Vec syndrome;
  bool pass;
  std::string reason;
};

struct Report {
  std::vector<BranchResult> branches;
  bool all_pass() const;
};

// Full protocol with the syndrome pinned to d: k quantum -> k quantum (x) (n-k) classical.
GradedRelation branch_relation(const StabilizerCode& code, const Vec& e, const Vec& correction);
Report verify_correction(const StabilizerCode& code, const std::vector<Vec>& errors, const CorrectionTable& table);

// Recovery channel n quantum -> k quantum (x) (n-k) classical with the correction W(-f(d))
// classically controlled inside the category.
GradedRelation affine_correction_protocol(const StabilizerCode& code, const AffineMap& f);
// encoder ; W(e) ; recovery.
GradedRelation protocol_with_error(const StabilizerCode& code, const AffineMap& f, const Vec& e);

// Text formats. Vectors are written `z-part | x-part`.
struct CodeFile {
  Prime p;
  std::size_t n;
  std::size_t k;
  std::vector<Vec> gens;
  Vec phases;
};
CodeFile parse_code(const std::string& text, std::optional<Prime> prime = std::nullopt);
StabilizerCode build_code(const CodeFile& f);
Vec parse_symplectic(Prime p, std::size_t n, const std::string& text);
CorrectionTable parse_table(Prime p, std::size_t n, std::size_t r, const std::string& text);
std::vector<Vec> parse_errors(Prime p, std::size_t n, const std::string& text);

struct SubspaceFile {
  Prime p;
  std::size_t n;
  GradedSubspace subspace;
};
SubspaceFile parse_subspace(const std::string& text, std::optional<Prime> prime = std::nullopt);

std::string format_tuple(const Vec& v);
std::string format_symplectic(const Vec& v);

}  // namespace stabrel
