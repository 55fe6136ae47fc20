#include "convfix/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace convfix {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

cplx unit_phase(double turns) {
  // exp(2*pi*i*turns), with quarter-turn values snapped exactly. Character
  // arithmetic produces rational turn counts, so kernels and +-1/+-i values
  // come out bit-exact.
  double r = turns - std::floor(turns);
  if (std::abs(r - 1.0) < 1e-12 || r < 1e-12) return cplx{1.0, 0.0};
  if (std::abs(r - 0.5) < 1e-12) return cplx{-1.0, 0.0};
  if (std::abs(r - 0.25) < 1e-12) return cplx{0.0, 1.0};
  if (std::abs(r - 0.75) < 1e-12) return cplx{0.0, -1.0};
  return std::polar(1.0, kTau * r);
}

}  // namespace

GroupTable::GroupTable(std::string name, int order, std::vector<int> mul,
                       std::vector<std::string> labels)
    : name_(std::move(name)), order_(order), mul_(std::move(mul)), labels_(std::move(labels)) {
  if (order_ < 1 || order_ > kMaxOrder)
    throw ConfigError("group order " + std::to_string(order_) + " outside [1, 256]");
  if (mul_.size() != static_cast<std::size_t>(order_) * order_)
    throw ConfigError("multiplication table size mismatch for " + name_);
  if (labels_.empty()) {
    labels_.reserve(order_);
    for (int i = 0; i < order_; ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != static_cast<std::size_t>(order_))
    throw ConfigError("label count mismatch for " + name_);
  validate();
}

void GroupTable::validate() {
  const int n = order_;
  for (int v : mul_)
    if (v < 0 || v >= n) throw ConfigError("table entry out of range in " + name_);

  // Two-sided identity.
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw ConfigError("no identity element in " + name_);
  identity_ = id;

  // Two-sided inverses.
  inv_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (mul(g, h) == id && mul(h, g) == id) {
        inv_[g] = h;
        break;
      }
    }
    if (inv_[g] < 0) throw ConfigError("missing inverse in " + name_);
  }

  // Exhaustive associativity.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = mul(a, b);
      for (int c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c)))
          throw ConfigError("non-associative table in " + name_);
    }

  abelian_ = true;
  for (int a = 0; a < n && abelian_; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }
}

int GroupTable::pow(int g, long long k) const {
  const int ord = element_order(g);
  long long r = k % ord;
  if (r < 0) r += ord;
  int acc = identity_;
  for (long long i = 0; i < r; ++i) acc = mul(acc, g);
  return acc;
}

int GroupTable::element_order(int g) const {
  int acc = g;
  int ord = 1;
  while (acc != identity_) {
    acc = mul(acc, g);
    ++ord;
  }
  return ord;
}

GroupPtr GroupTable::cyclic(int n) {
  if (n < 1 || n > kMaxOrder) throw ConfigError("cyclic order must be in [1, 256]");
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return std::make_shared<GroupTable>("cyclic:" + std::to_string(n), n, std::move(mul));
}

GroupPtr GroupTable::dihedral(int n) {
  if (n < 2 || 2 * n > kMaxOrder) throw ConfigError("dihedral parameter must be in [2, 128]");
  const int order = 2 * n;
  std::vector<int> mul(static_cast<std::size_t>(order) * order);
  auto at = [&](int a, int b) -> int& { return mul[static_cast<std::size_t>(a) * order + b]; };
  // 0..n-1: rotations r^k; n..2n-1: reflections r^k s.
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const bool ra = a < n, rb = b < n;
      const int x = a % n, y = b % n;
      if (ra && rb) at(a, b) = (x + y) % n;
      else if (ra && !rb) at(a, b) = n + (x + y) % n;
      else if (!ra && rb) at(a, b) = n + ((x - y) % n + n) % n;
      else at(a, b) = ((x - y) % n + n) % n;
    }
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) labels.push_back("r" + std::to_string(k));
  for (int k = 0; k < n; ++k) labels.push_back("r" + std::to_string(k) + "s");
  return std::make_shared<GroupTable>("dihedral:" + std::to_string(n), order, std::move(mul),
                                      std::move(labels));
}

GroupPtr GroupTable::symmetric(int n) {
  if (n < 1 || n > 5) throw ConfigError("symmetric parameter must be in [1, 5]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());

  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) index[perms[i]] = i;

  std::vector<int> mul(static_cast<std::size_t>(order) * order);
  std::vector<int> comp(n);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];  // (ab)(x) = a(b(x))
      mul[static_cast<std::size_t>(a) * order + b] = index.at(comp);
    }
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s;
    for (int v : q) s += static_cast<char>('0' + v);
    labels.push_back(s);
  }
  return std::make_shared<GroupTable>("symmetric:" + std::to_string(n), order, std::move(mul),
                                      std::move(labels));
}

GroupPtr GroupTable::quaternion8() {
  // Element = (axis, sign): axis 0..3 ~ {1,i,j,k}; index = axis + 4*(sign<0).
  struct Q {
    int axis;
    int sign;
  };
  static const int prod_axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int prod_sign[4][4] = {{+1, +1, +1, +1},
                                      {+1, -1, +1, -1},
                                      {+1, -1, -1, +1},
                                      {+1, +1, -1, -1}};
  auto decode = [](int idx) { return Q{idx % 4, idx < 4 ? +1 : -1}; };
  auto encode = [](Q q) { return q.axis + (q.sign < 0 ? 4 : 0); };
  std::vector<int> mul(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const Q qa = decode(a), qb = decode(b);
      Q out{prod_axis[qa.axis][qb.axis], qa.sign * qb.sign * prod_sign[qa.axis][qb.axis]};
      mul[static_cast<std::size_t>(a) * 8 + b] = encode(out);
    }
  std::vector<std::string> labels = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return std::make_shared<GroupTable>("quaternion8", 8, std::move(mul), std::move(labels));
}

GroupPtr GroupTable::direct_product(const GroupPtr& a, const GroupPtr& b) {
  const long long order = static_cast<long long>(a->order()) * b->order();
  if (order > kMaxOrder) throw ConfigError("product order exceeds 256");
  const int n = static_cast<int>(order), nb = b->order();
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
      mul[static_cast<std::size_t>(x) * n + y] = a->mul(xa, ya) * nb + b->mul(xb, yb);
    }
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x)
    labels.push_back("(" + a->label(x / nb) + "," + b->label(x % nb) + ")");
  return std::make_shared<GroupTable>("product(" + a->name() + "," + b->name() + ")", n,
                                      std::move(mul), std::move(labels));
}

namespace {

struct SpecParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  int number() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ConfigError("expected number at position " + std::to_string(start) +
                                        " in group spec '" + text + "'");
    return std::stoi(text.substr(start, pos - start));
  }

  GroupPtr parse() {
    const std::string name = ident();
    if (name == "cyclic" || name == "dihedral" || name == "symmetric") {
      if (!eat(':'))
        throw ConfigError("expected ':<n>' after '" + name + "' in group spec '" + text + "'");
      const int n = number();
      if (name == "cyclic") return GroupTable::cyclic(n);
      if (name == "dihedral") return GroupTable::dihedral(n);
      return GroupTable::symmetric(n);
    }
    if (name == "quaternion8") return GroupTable::quaternion8();
    if (name == "product") {
      if (!eat('(')) throw ConfigError("expected '(' after 'product' in '" + text + "'");
      GroupPtr a = parse();
      if (!eat(',')) throw ConfigError("expected ',' in product spec '" + text + "'");
      GroupPtr b = parse();
      if (!eat(')')) throw ConfigError("expected ')' in product spec '" + text + "'");
      return GroupTable::direct_product(a, b);
    }
    throw ConfigError("unknown group spec '" + text + "'");
  }
};

}  // namespace

GroupPtr build_group(const std::string& spec) {
  SpecParser parser{spec};
  GroupPtr g = parser.parse();
  parser.skip_ws();
  if (parser.pos != spec.size())
    throw ConfigError("trailing characters in group spec '" + spec + "'");
  return g;
}

std::string group_to_json(const GroupTable& g) {
  std::ostringstream out;
  out << "{\"name\":\"" << g.name() << "\",\"order\":" << g.order() << ",\"mul\":[";
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      if (a != 0 || b != 0) out << ',';
      out << g.mul(a, b);
    }
  out << "],\"identity\":" << g.identity() << "}";
  return out.str();
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

std::vector<int> semigroup_closure(const GroupTable& g, const std::vector<int>& seed) {
  if (seed.empty()) throw Error("semigroup_closure requires a nonempty generating set");
  std::set<int> known(seed.begin(), seed.end());
  std::deque<int> todo(known.begin(), known.end());
  while (!todo.empty()) {
    const int x = todo.front();
    todo.pop_front();
    for (int s : seed) {
      for (int y : {g.mul(x, s), g.mul(s, x)}) {
        if (known.insert(y).second) todo.push_back(y);
      }
    }
  }
  return {known.begin(), known.end()};
}

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& seed) {
  std::vector<int> gens = seed;
  gens.push_back(g->identity());
  for (int s : seed) gens.push_back(g->inv(s));
  std::vector<int> elems = semigroup_closure(*g, gens);
  return Subgroup{g, std::move(elems)};
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {g->identity()}}; }

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < g->order(); ++i) all[i] = i;
  return Subgroup{g, std::move(all)};
}

namespace {

std::vector<std::vector<int>> cosets_impl(const GroupTable& g, const Subgroup& h, bool left) {
  std::vector<int> assigned(g.order(), -1);
  std::vector<std::vector<int>> blocks;
  for (int rep = 0; rep < g.order(); ++rep) {
    if (assigned[rep] >= 0) continue;
    std::vector<int> block;
    block.reserve(h.elements.size());
    for (int x : h.elements) block.push_back(left ? g.mul(rep, x) : g.mul(x, rep));
    std::sort(block.begin(), block.end());
    for (int m : block) assigned[m] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace

std::vector<std::vector<int>> left_cosets(const GroupTable& g, const Subgroup& h) {
  return cosets_impl(g, h, true);
}

std::vector<std::vector<int>> right_cosets(const GroupTable& g, const Subgroup& h) {
  return cosets_impl(g, h, false);
}

CharacterMap::CharacterMap(Subgroup domain, std::vector<cplx> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.elements.size())
    throw Error("character value count does not match its domain");
}

CharacterMap CharacterMap::trivial(Subgroup domain) {
  std::vector<cplx> vals(domain.elements.size(), cplx{1.0, 0.0});
  return CharacterMap(std::move(domain), std::move(vals));
}

cplx CharacterMap::at(int g) const {
  const auto it = std::lower_bound(domain_.elements.begin(), domain_.elements.end(), g);
  if (it == domain_.elements.end() || *it != g)
    throw Error("character evaluated outside its domain");
  return values_[static_cast<std::size_t>(it - domain_.elements.begin())];
}

bool CharacterMap::same_as(const CharacterMap& other, double tol) const {
  if (domain_.elements != other.domain_.elements) return false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (std::abs(values_[i] - other.values_[i]) > tol) return false;
  return true;
}

void CharacterMap::validate(double tol) const {
  const GroupTable& g = *domain_.parent;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (std::abs(std::abs(values_[i]) - 1.0) > tol) throw Error("character value off the circle");
  if (std::abs(at(g.identity()) - cplx{1.0, 0.0}) > tol)
    throw Error("character is not 1 at the identity");
  for (int a : domain_.elements)
    for (int b : domain_.elements)
      if (std::abs(at(g.mul(a, b)) - at(a) * at(b)) > tol)
        throw Error("character is not multiplicative");
}

SubgroupTable subgroup_table(const Subgroup& h) {
  const GroupTable& g = *h.parent;
  const int n = static_cast<int>(h.elements.size());
  std::vector<int> from_parent(g.order(), -1);
  for (int i = 0; i < n; ++i) from_parent[h.elements[i]] = i;
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int prod = g.mul(h.elements[a], h.elements[b]);
      const int idx = from_parent[prod];
      if (idx < 0) throw Error("subgroup element set is not closed");
      mul[static_cast<std::size_t>(a) * n + b] = idx;
    }
  std::vector<std::string> labels;
  for (int x : h.elements) labels.push_back(g.label(x));
  auto table = std::make_shared<GroupTable>("sub(" + g.name() + ")", n, std::move(mul),
                                            std::move(labels));
  return SubgroupTable{table, h.elements, std::move(from_parent)};
}

QuotientGroup quotient_group(const GroupPtr& g, const std::vector<int>& normal_elements) {
  Subgroup k{g, normal_elements};
  std::sort(k.elements.begin(), k.elements.end());
  for (int x = 0; x < g->order(); ++x)
    for (int e : k.elements)
      if (!k.contains(g->mul(g->mul(x, e), g->inv(x))))
        throw Error("quotient by a non-normal subgroup");

  const auto blocks = left_cosets(*g, k);
  std::vector<int> proj(g->order(), -1), reps;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    reps.push_back(blocks[b].front());
    for (int m : blocks[b]) proj[m] = static_cast<int>(b);
  }
  const int q = static_cast<int>(blocks.size());
  std::vector<int> mul(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      mul[static_cast<std::size_t>(a) * q + b] = proj[g->mul(reps[a], reps[b])];
  auto table = std::make_shared<GroupTable>("quot(" + g->name() + ")", q, std::move(mul));
  return QuotientGroup{table, std::move(proj), std::move(reps)};
}

AbelianBasis abelian_basis(const GroupPtr& a) {
  if (!a->abelian()) throw Error("abelian_basis requires an abelian group");

  // Recursive peeling: largest-order element first, then lift a basis of the
  // quotient, correcting each lift inside the peeled cyclic factor.
  std::vector<int> gens, orders;
  std::function<std::vector<std::pair<int, int>>(const GroupPtr&)> peel =
      [&](const GroupPtr& grp) -> std::vector<std::pair<int, int>> {
    if (grp->order() == 1) return {};
    int g1 = -1, d1 = 0;
    for (int x = 0; x < grp->order(); ++x) {
      const int ord = grp->element_order(x);
      if (ord > d1) {
        d1 = ord;
        g1 = x;
      }
    }
    std::vector<int> cyc;
    for (int k = 0, acc = grp->identity();; acc = grp->mul(acc, g1)) {
      cyc.push_back(acc);
      if (++k == d1) break;
    }
    std::sort(cyc.begin(), cyc.end());
    const QuotientGroup quot = quotient_group(grp, cyc);
    std::vector<std::pair<int, int>> out = {{g1, d1}};
    for (const auto& [q_elem, d] : peel(quot.table)) {
      int h = quot.reps[q_elem];
      const int hd = grp->pow(h, d);
      int m = -1;
      for (int e = 0, acc = grp->identity(); e < d1; ++e, acc = grp->mul(acc, g1))
        if (acc == hd) {
          m = e;
          break;
        }
      if (m < 0 || m % d != 0) throw Error("abelian basis lift failed");
      h = grp->mul(h, grp->pow(g1, d1 - m / d));
      if (grp->element_order(h) != d || quot.projection[h] != q_elem)
        throw Error("abelian basis lift produced a bad generator");
      out.emplace_back(h, d);
    }
    return out;
  };

  AbelianBasis basis;
  for (const auto& [g, d] : peel(a)) {
    basis.generators.push_back(g);
    basis.orders.push_back(d);
  }

  // Enumerate all exponent tuples; the factorisation must be a bijection.
  const int r = static_cast<int>(basis.generators.size());
  basis.coordinates.assign(a->order(), {});
  std::vector<int> tuple(r, 0);
  long long total = 1;
  for (int d : basis.orders) total *= d;
  if (total != a->order()) throw Error("abelian basis orders do not multiply to |A|");
  for (long long count = 0; count < total; ++count) {
    int elem = a->identity();
    for (int i = 0; i < r; ++i) elem = a->mul(elem, a->pow(basis.generators[i], tuple[i]));
    if (!basis.coordinates[elem].empty()) throw Error("abelian basis is not independent");
    basis.coordinates[elem] = tuple;
    for (int i = r - 1; i >= 0; --i) {
      if (++tuple[i] < basis.orders[i]) break;
      tuple[i] = 0;
    }
  }
  return basis;
}

namespace {

GroupPtr product_of_cyclics(const std::vector<int>& orders, const std::string& name) {
  GroupPtr acc = GroupTable::cyclic(orders.empty() ? 1 : orders.front());
  for (std::size_t i = 1; i < orders.size(); ++i)
    acc = GroupTable::direct_product(acc, GroupTable::cyclic(orders[i]));
  return std::make_shared<GroupTable>(name, acc->order(),
                                      [&] {
                                        std::vector<int> mul;
                                        mul.reserve(static_cast<std::size_t>(acc->order()) * acc->order());
                                        for (int x = 0; x < acc->order(); ++x)
                                          for (int y = 0; y < acc->order(); ++y)
                                            mul.push_back(acc->mul(x, y));
                                        return mul;
                                      }());
}

std::vector<int> mixed_radix(long long index, const std::vector<int>& orders) {
  std::vector<int> tuple(orders.size(), 0);
  for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
    tuple[i] = static_cast<int>(index % orders[i]);
    index /= orders[i];
  }
  return tuple;
}

}  // namespace

DualGroup dual_group(const GroupPtr& a) {
  if (!a->abelian()) throw Error("dual_group requires an abelian group");
  const AbelianBasis basis = abelian_basis(a);
  const int n = a->order();
  GroupPtr dual = product_of_cyclics(basis.orders, "dual(" + a->name() + ")");

  Eigen::MatrixXcd pairing(n, n);
  for (int chi = 0; chi < n; ++chi) {
    const std::vector<int> k = mixed_radix(chi, basis.orders);
    for (int x = 0; x < n; ++x) {
      double turns = 0.0;
      for (std::size_t i = 0; i < basis.orders.size(); ++i)
        turns += static_cast<double>(k[i]) * basis.coordinates[x][i] / basis.orders[i];
      pairing(chi, x) = unit_phase(turns);
    }
  }
  return DualGroup{dual, std::move(pairing)};
}

std::vector<CharacterMap> characters_of(const Subgroup& h) {
  const SubgroupTable sub = subgroup_table(h);
  const GroupPtr& ht = sub.table;
  const int n = ht->order();

  // Commutator subgroup (the set of commutators is conjugation-closed, so
  // plain closure suffices).
  std::vector<int> comms = {ht->identity()};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      comms.push_back(ht->mul(ht->mul(ht->mul(x, y), ht->inv(x)), ht->inv(y)));
  const Subgroup derived = subgroup_closure(ht, comms);

  const QuotientGroup quot = quotient_group(ht, derived.elements);
  const AbelianBasis basis = abelian_basis(quot.table);

  std::vector<CharacterMap> out;
  const int q = quot.table->order();
  for (int chi = 0; chi < q; ++chi) {
    const std::vector<int> k = mixed_radix(chi, basis.orders);
    std::vector<cplx> values;
    values.reserve(h.elements.size());
    for (std::size_t i = 0; i < h.elements.size(); ++i) {
      const int q_elem = quot.projection[static_cast<int>(i)];
      double turns = 0.0;
      for (std::size_t j = 0; j < basis.orders.size(); ++j)
        turns += static_cast<double>(k[j]) * basis.coordinates[q_elem][j] / basis.orders[j];
      values.push_back(unit_phase(turns));
    }
    out.emplace_back(h, std::move(values));
  }
  return out;
}

std::string CharacterConflict::describe(const GroupTable& g) const {
  auto word_text = [&](const std::vector<int>& word) {
    if (word.empty()) return std::string("e");
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) s += "*";
      s += g.label(word[i]);
    }
    return s;
  };
  std::ostringstream out;
  out << "element " << g.label(element) << ": word " << word_text(word_a) << " forces phase ("
      << phase_a.real() << "," << phase_a.imag() << ") but word " << word_text(word_b)
      << " forces (" << phase_b.real() << "," << phase_b.imag() << ")";
  return out.str();
}

ExtendResult extend_character(const GroupPtr& g, const std::vector<int>& s,
                              const std::map<int, cplx>& phases, double tol) {
  for (int x : s)
    if (!phases.count(x)) throw Error("extend_character: phase missing for a generator");
  for (const auto& [x, p] : phases) {
    if (std::find(s.begin(), s.end(), x) == s.end())
      throw Error("extend_character: phase given off the generating set");
    if (std::abs(std::abs(p) - 1.0) > tol) throw Error("extend_character: non-unimodular phase");
  }

  const Subgroup closure = subgroup_closure(g, s);
  const int id = g->identity();

  std::map<int, cplx> chi;
  std::map<int, std::vector<int>> word;
  chi[id] = cplx{1.0, 0.0};
  word[id] = {};
  std::deque<int> todo = {id};
  // Every generator has finite order, so multiplying by S alone reaches the
  // full generated subgroup; checking every (element, generator) edge makes
  // the assignment a homomorphism whenever no conflict appears.
  while (!todo.empty()) {
    const int x = todo.front();
    todo.pop_front();
    for (int gen : s) {
      const int y = g->mul(x, gen);
      const cplx forced = chi.at(x) * phases.at(gen);
      const auto it = chi.find(y);
      if (it == chi.end()) {
        chi[y] = forced;
        word[y] = word[x];
        word[y].push_back(gen);
        todo.push_back(y);
      } else if (std::abs(it->second - forced) > tol) {
        CharacterConflict conflict;
        conflict.element = y;
        conflict.word_a = word[x];
        conflict.word_a.push_back(gen);
        conflict.word_b = word[y];
        conflict.phase_a = forced;
        conflict.phase_b = it->second;
        return conflict;
      }
    }
  }

  std::vector<cplx> values;
  values.reserve(closure.elements.size());
  for (int x : closure.elements) values.push_back(chi.at(x));
  CharacterMap result(closure, std::move(values));
  result.validate(std::max(tol, 1e-9) * 16);
  return result;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> todo;
  const std::vector<int> triv = {g->identity()};
  seen.insert(triv);
  todo.push_back(triv);
  while (!todo.empty()) {
    const std::vector<int> h = todo.front();
    todo.pop_front();
    for (int x = 0; x < g->order(); ++x) {
      if (std::binary_search(h.begin(), h.end(), x)) continue;
      std::vector<int> gens = h;
      gens.push_back(x);
      std::vector<int> bigger = subgroup_closure(g, gens).elements;
      if (seen.insert(bigger).second) todo.push_back(std::move(bigger));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& elems : seen) out.push_back(Subgroup{g, elems});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

}  // namespace convfix
