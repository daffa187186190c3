// Orbit classification, skew-symmetric rank and explicit minimal decompositions
// of trivectors in at most 8 essential variables.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skewrank/apolarity.hpp"
#include "skewrank/grassmann.hpp"
#include "skewrank/multivector.hpp"

namespace skewrank {

enum class OrbitLabel : int {
  II = 2, III, IV, V, VI, VII, VIII, IX, X, XI, XII, XIII, XIV, XV, XVI, XVII, XVIII, XIX, XX,
  XXI, XXII, XXIII
};

struct OrbitInfo {
  OrbitLabel label;
  const char* name;
  int ambient;  // minimal number of essential variables
  int rank;     // skew-symmetric rank
};

const std::vector<OrbitLabel>& all_labels();
const OrbitInfo& info(OrbitLabel label);
std::string to_string(OrbitLabel label);
OrbitLabel parse_label(const std::string& text);  // throws std::invalid_argument

// ---------------------------------------------------------------- errors

/// The input needs more essential variables than the requested classifier handles.
class WrongClassifier : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// More than 8 essential variables (or an ambient dimension the atlas cannot treat).
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// Invariants disagree with every known orbit; indicates a bug.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------- decompositions

/// coeff * v0 ^ v1 ^ v2 with exact entries (possibly in Q(sqrt D)).
struct Term {
  Scalar coeff;
  std::vector<Vec> vectors;
  Multivector expand() const;
};

/// Floating-point term with complex entries; the coefficient is folded into the
/// first vector.
struct NumericTerm {
  std::vector<std::vector<std::complex<double>>> vectors;
};

struct Decomposition {
  int dim = 0;
  bool available = true;  // false: exact decomposition not found (see diagnostic)
  bool numeric = false;
  mpz_class field_D = 1;  // 1 for Q
  std::vector<Term> terms;
  std::vector<NumericTerm> numeric_terms;
  std::string diagnostic;

  size_t size() const { return numeric ? numeric_terms.size() : terms.size(); }
  /// Exact expansion (exact decompositions only).
  Multivector expand() const;
};

struct VerificationReport {
  bool exact = false;
  bool ok = false;
  size_t terms = 0;
  double residual = 0.0;  // relative residual for numeric decompositions
  bool all_terms_decomposable = true;
};
/// Expands the decomposition and compares with t. Exact decompositions must
/// match with zero residual; numeric ones must be below `tolerance`.
VerificationReport verify_decomposition(const Multivector& t, const Decomposition& dec,
                                        double tolerance = 1e-9);

// ---------------------------------------------------------------- catalog

/// Normal form in the label's minimal ambient dimension (letters compressed
/// order-preservingly onto e0, e1, ...).
Multivector normal_form(OrbitLabel label);
/// Embeds a tensor into a larger ambient space (indices unchanged).
Multivector embed(const Multivector& t, int dim);

/// Parses a sum of wedge products of linear forms over single-letter basis
/// names, e.g. "(a-s)qp + (q-c)(p+r)s + 1/2 ab(c-p)". letters[i] names e_i.
Decomposition parse_letter_decomposition(const std::string& text,
                                         const std::string& letters = "abcpqrst");
/// The table's decomposition. Explicit rows use the normal-form basis; generic
/// rows instantiate v_i, m_i, l_i pseudo-randomly from the seed.
Decomposition standard_decomposition(OrbitLabel label, uint64_t seed = 0);
/// Extra decompositions for IX and X written in the normal-form basis.
Decomposition alternative_decomposition(OrbitLabel label);

/// Seeded random invertible integer matrix with entries in [-9, 9].
Matrix random_invertible(int dim, uint64_t seed);
/// g . normal_form(label) embedded in `ambient` variables (default: minimal).
Multivector orbit_sample(OrbitLabel label, uint64_t seed, int ambient = 0);

// ---------------------------------------------------------------- invariants

/// T(x)_y = vol-coefficient of e_y ^ (x . t) ^ t for a trivector in 6 variables.
Matrix split_endomorphism(const Multivector& t);
/// tr(T^2); nonzero exactly on orbit V among 6-essential-variable trivectors.
Scalar split_invariant(const Multivector& t);
/// vol-coefficient of t ^ t. Kept for completeness: it vanishes identically for
/// odd degree, so it cannot separate IV from V.
Scalar wedge_square_class(const Multivector& t);

/// B(x,y) vol = (x . t) ^ (y . t) ^ t on the dual of a 7-dimensional space.
Matrix b_matrix(const Multivector& t);
Scalar detB(const Multivector& t);
/// Exact interpolation of s -> detB(t + s w) (degree <= 21).
Poly detB_line_polynomial(const Multivector& t, const Multivector& w);

/// Count of projective l over GF(p) with l ^ t decomposable (7 variables).
/// Returns -1 when l -> l ^ t has a nonzero kernel over GF(p).
/// Throws BadPrime when p divides a denominator or lowers the essential dimension.
long decomposable_l_count(const Multivector& t, uint32_t p);
/// The GF(p) points themselves (normalized so the first nonzero entry is 1).
std::vector<std::vector<uint32_t>> decomposable_l_locus(const Multivector& t, uint32_t p);
/// Count of projective x over GF(p) with rank(x . t) <= 2 (8 variables).
long xt_rank2_count(const Multivector& t, uint32_t p);

struct Signature {
  int ambient = 0;
  size_t n_essential = 0;
  size_t ker12 = 0;  // dim ker C^{1,2} (in the ambient space)
  size_t ker21 = 0;  // dim ker C^{2,1}
  std::optional<bool> split_nonzero;   // 6 essential variables
  std::optional<bool> detB_nonzero;    // 7 essential variables
  std::optional<size_t> rankB;         // 7 essential variables
  std::optional<size_t> lkernel_dim;   // 7: dim ker (l -> l ^ t)
  /// (prime, count) at good primes; -1 encodes "kernel" (orbit VI). For 8
  /// variables the count is of the rank <= 2 locus of x . t.
  std::vector<std::pair<uint32_t, long>> locus_counts;
  std::map<std::string, size_t> aux8;  // rank invariants, 8 essential variables

  /// Equality of every field, comparing locus counts only at shared primes.
  bool same_as(const Signature& o) const;
  std::string str() const;
};

struct SignatureOptions {
  bool locus_counts = true;
};
Signature signature(const Multivector& t, const SignatureOptions& opts = {});
/// Rank invariants used to separate the 8-variable orbits.
std::map<std::string, size_t> rank_invariants8(const Multivector& t);

// ---------------------------------------------------------------- classification

struct Classification {
  std::vector<OrbitLabel> labels;  // one entry when the orbit is determined
  std::optional<int> rank;         // known skew-symmetric rank
  size_t n_essential = 0;
  std::optional<Decomposition> decomposition;
  std::string note;
};

struct ClassifyOptions {
  uint64_t seed = 0;
  double tolerance = 1e-9;
  bool decompose = true;
  int retry_budget = 12;
};

Classification classify6(const Multivector& t, const ClassifyOptions& opts = {});
Classification classify7(const Multivector& t, const ClassifyOptions& opts = {});
Classification classify8(const Multivector& t, const ClassifyOptions& opts = {});
/// Dispatches on the number of essential variables. The zero tensor is rejected.
Classification classify(const Multivector& t, const ClassifyOptions& opts = {});

/// Rank-4 decomposition of an orbit-X tensor in 7 essential variables: exact
/// when the degree-7 line polynomial has a rational root, numeric otherwise.
Decomposition rank4_decompose7(const Multivector& t, uint64_t seed = 0, double tolerance = 1e-9,
                               int retry_budget = 12);

/// Three-term decomposition for rank-3 tensors whose decomposable-l locus
/// contains l (orbit VIII and the 8-variable slices of XVI and XIX).
std::optional<Decomposition> decompose_with_l(const Multivector& t, const Vec& l);

/// Classifies a batch in parallel with `jobs` threads; output order follows input.
std::vector<Classification> classify_batch(const std::vector<Multivector>& inputs,
                                           const ClassifyOptions& opts = {}, int jobs = 1);

// ---------------------------------------------------------------- signature table

struct SignatureTableEntry {
  OrbitLabel label;
  std::map<std::string, size_t> invariants;
  int rank = 0;
  int samples = 0;
};
struct SignatureTable {
  int version = 1;
  std::vector<SignatureTableEntry> entries;
  std::vector<OrbitLabel> match(const std::map<std::string, size_t>& inv) const;
  std::string to_json() const;
  static SignatureTable from_json(const std::string& text);
};
/// The table compiled into the library (or the one installed by set_signature_table).
const SignatureTable& signature_table();
void set_signature_table(const SignatureTable& table);
/// Rebuilds the table by sampling each label XI-XXIII; fails if samples of one
/// label disagree.
SignatureTable generate_signature_table(int samples_per_label, uint64_t seed = 0, int jobs = 1);

}  // namespace skewrank
