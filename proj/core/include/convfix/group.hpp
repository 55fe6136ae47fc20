#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace convfix {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input problems: bad group specs, bad config files, malformed measures.
struct ConfigError : Error {
  using Error::Error;
};

// A lattice convolution grew past the configured atom cap.
struct SupportCapError : Error {
  using Error::Error;
};

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

/// A finite group as an explicit Cayley table. Element indices are
/// 0..order-1; the table is validated on construction (associativity on all
/// triples, two-sided identity and inverses, exhaustive commutativity for
/// the abelian flag). Orders up to 256 are supported.
class GroupTable {
 public:
  static constexpr int kMaxOrder = 256;

  // mul is row-major order x order. Identity, inverses and the abelian flag
  // are derived and checked here.
  GroupTable(std::string name, int order, std::vector<int> mul,
             std::vector<std::string> labels = {});

  static GroupPtr cyclic(int n);
  static GroupPtr dihedral(int n);     // order 2n; 0..n-1 rotations, n..2n-1 reflections
  static GroupPtr symmetric(int n);    // n <= 5, permutations in lexicographic order
  static GroupPtr quaternion8();       // 1,i,j,k,-1,-i,-j,-k
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

  int order() const { return order_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return identity_; }
  bool abelian() const { return abelian_; }
  const std::string& name() const { return name_; }
  const std::string& label(int g) const { return labels_[g]; }

  int pow(int g, long long k) const;
  int element_order(int g) const;

  bool operator==(const GroupTable& other) const {
    return order_ == other.order_ && mul_ == other.mul_;
  }

 private:
  std::string name_;
  int order_;
  std::vector<int> mul_;
  int identity_ = 0;
  std::vector<int> inv_;
  bool abelian_ = false;
  std::vector<std::string> labels_;

  void validate();
};

/// Parses the group-spec grammar: `cyclic:4`, `dihedral:5`, `symmetric:4`,
/// `quaternion8`, `product(cyclic:2,cyclic:3)` (products nest). Throws
/// ConfigError for unknown names or out-of-bounds orders.
GroupPtr build_group(const std::string& spec);

// {name, order, mul (row-major), identity}
std::string group_to_json(const GroupTable& g);

struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;  // sorted, contains identity, closed

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
  bool same_elements(const Subgroup& other) const { return elements == other.elements; }
};

/// Smallest multiplicatively closed superset of a nonempty S. In a finite
/// group this coincides with the generated subgroup.
std::vector<int> semigroup_closure(const GroupTable& g, const std::vector<int>& seed);

/// Subgroup generated by S; the empty set generates the trivial subgroup.
Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& seed);

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);

/// Partition of G into left cosets gH. Each block is sorted; blocks are
/// ordered by their minimal element, which is also the canonical
/// representative (block front).
std::vector<std::vector<int>> left_cosets(const GroupTable& g, const Subgroup& h);

/// Right cosets Hg, same conventions.
std::vector<std::vector<int>> right_cosets(const GroupTable& g, const Subgroup& h);

/// A homomorphism from a subgroup into the unit circle.
class CharacterMap {
 public:
  CharacterMap(Subgroup domain, std::vector<cplx> values);

  static CharacterMap trivial(Subgroup domain);

  const Subgroup& domain() const { return domain_; }
  cplx at(int g) const;           // g must lie in the domain
  bool defined_at(int g) const { return domain_.contains(g); }
  const std::vector<cplx>& values() const { return values_; }

  // |chi1(h) - chi2(h)| <= tol on a common domain.
  bool same_as(const CharacterMap& other, double tol = 1e-12) const;

  void validate(double tol = 1e-9) const;  // unit modulus + multiplicativity

 private:
  Subgroup domain_;
  std::vector<cplx> values_;  // aligned with domain_.elements
};

/// All homomorphisms H -> T, computed through the abelianisation H/[H,H]
/// and a cyclic decomposition of that quotient (maximal-order element
/// peeling). The list has |H/[H,H]| entries, in a deterministic order; for
/// a cyclic group of order n presented by the built-in table the k-th entry
/// is chi_k(j) = exp(2*pi*i*k*j/n).
std::vector<CharacterMap> characters_of(const Subgroup& h);

struct DualGroup {
  GroupPtr group;              // \hat{A}, isomorphic to A
  Eigen::MatrixXcd pairing;    // pairing(chi, a), bimultiplicative, non-degenerate
};

/// Dual group of a finite abelian group together with its pairing matrix.
/// Rejects non-abelian inputs.
DualGroup dual_group(const GroupPtr& a);

/// Witness for a failed character extension: two generator words with the
/// same product but distinct forced phases.
struct CharacterConflict {
  int element = 0;                  // common product of the two words
  std::vector<int> word_a, word_b;  // generator sequences (parent indices)
  cplx phase_a, phase_b;

  std::string describe(const GroupTable& g) const;
};

using ExtendResult = std::variant<CharacterMap, CharacterConflict>;

/// Extends prescribed unit phases on S to a character of the subgroup
/// generated by S, or reports a conflict witness. Phases must be defined
/// exactly on S.
ExtendResult extend_character(const GroupPtr& g, const std::vector<int>& s,
                              const std::map<int, cplx>& phases, double tol = 1e-9);

/// All subgroups, ordered by (order, elements). Exact enumeration by
/// closure of incrementally extended generating sets.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

// --- internals shared with other modules ---

struct SubgroupTable {
  GroupPtr table;               // H relabelled as 0..|H|-1
  std::vector<int> to_parent;   // new index -> parent index
  std::vector<int> from_parent; // parent index -> new index, -1 off H
};
SubgroupTable subgroup_table(const Subgroup& h);

struct QuotientGroup {
  GroupPtr table;
  std::vector<int> projection;  // parent index -> coset index
  std::vector<int> reps;        // coset index -> representative (minimal element)
};
// K must be normal in G (checked).
QuotientGroup quotient_group(const GroupPtr& g, const std::vector<int>& normal_elements);

// Internal direct-product decomposition of a finite abelian group:
// generators with orders (d1, d2, ...) such that every element factors
// uniquely as prod g_i^{a_i}. Peeling picks a maximal-order element first.
struct AbelianBasis {
  std::vector<int> generators;
  std::vector<int> orders;
  // coordinates[x][i] = exponent of generators[i] in x
  std::vector<std::vector<int>> coordinates;
};
AbelianBasis abelian_basis(const GroupPtr& a);

/// The integer lattice Z as a carrier marker. The window is the half-width
/// used by truncated weak* tests; every lattice operation takes it (or a
/// caller-supplied override) explicitly.
struct LatticeGroup {
  int window = 64;
};

}  // namespace convfix
