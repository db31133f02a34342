#ifndef GOGSTAR_GROUPS_HPP
#define GOGSTAR_GROUPS_HPP

// Group backends: the trivial group, groups given by a finite multiplication
// table, and the infinite cyclic group. Subgroups, homomorphisms and left coset
// spaces over them.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gogstar/error.hpp"

namespace gogstar {

/// Element ids for finite backends; integers for the infinite cyclic group.
using Element = std::int64_t;

class Group {
 public:
  enum class Kind { Trivial, Finite, InfiniteCyclic };

  static Group trivial() { return Group(Kind::Trivial, 1, {0}); }
  static Group infinite_cyclic() { return Group(Kind::InfiniteCyclic, 0, {}); }

  /// Row-major multiplication table over ids 0..order-1 with identity 0.
  /// Not validated here; see validate_group.
  static Group table(std::size_t order, std::vector<Element> entries) {
    return Group(Kind::Finite, order, std::move(entries));
  }

  /// Z/n written additively.
  static Group cyclic(std::size_t n) {
    if (n == 0) throw InputError("cyclic group of order 0");
    if (n == 1) return trivial();
    std::vector<Element> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Element>((a + b) % n);
    return table(n, std::move(t));
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ != Kind::InfiniteCyclic; }
  bool is_trivial() const { return kind_ == Kind::Trivial || (kind_ == Kind::Finite && order_ == 1); }

  std::size_t order() const {
    if (!is_finite()) throw InputError("order of an infinite group");
    return order_;
  }

  Element identity() const { return 0; }

  bool contains(Element x) const {
    if (!is_finite()) return true;
    return x >= 0 && static_cast<std::size_t>(x) < order_;
  }

  Element multiply(Element a, Element b) const {
    if (!is_finite()) return a + b;
    check(a);
    check(b);
    return (*table_)[static_cast<std::size_t>(a) * order_ + static_cast<std::size_t>(b)];
  }

  Element inverse(Element a) const {
    if (!is_finite()) return -a;
    check(a);
    Element inv = (*inverses_)[static_cast<std::size_t>(a)];
    if (inv < 0) throw InputError("element " + std::to_string(a) + " has no inverse");
    return inv;
  }

  Element power(Element a, std::int64_t k) const {
    if (!is_finite()) return a * k;
    if (k < 0) {
      a = inverse(a);
      k = -k;
    }
    Element result = identity();
    Element base = a;
    while (k > 0) {
      if (k & 1) result = multiply(result, base);
      base = multiply(base, base);
      k >>= 1;
    }
    return result;
  }

  Element conjugate(Element k, Element x) const { return multiply(multiply(k, x), inverse(k)); }

  std::vector<Element> elements() const {
    std::vector<Element> out(order());
    std::iota(out.begin(), out.end(), Element{0});
    return out;
  }

  const std::vector<Element>& entries() const { return *table_; }

  /// A small generating set: {1} for Z, a greedy irredundant set for finite groups.
  std::vector<Element> generators() const;

  bool operator==(const Group& other) const {
    return kind_ == other.kind_ && order_ == other.order_ && *table_ == *other.table_;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Trivial: return "trivial";
      case Kind::InfiniteCyclic: return "Z";
      default: return "table(" + std::to_string(order_) + ")";
    }
  }

 private:
  Group(Kind kind, std::size_t order, std::vector<Element> entries)
      : kind_(kind), order_(order), table_(std::make_shared<const std::vector<Element>>(std::move(entries))) {
    std::vector<Element> inv(order_, -1);
    if (table_->size() == order_ * order_) {
      auto in_range = [&](Element v) { return v >= 0 && static_cast<std::size_t>(v) < order_; };
      for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = 0; b < order_; ++b)
          if ((*table_)[a * order_ + b] == 0 && (*table_)[b * order_ + a] == 0 && in_range(static_cast<Element>(b))) {
            inv[a] = static_cast<Element>(b);
            break;
          }
    }
    inverses_ = std::make_shared<const std::vector<Element>>(std::move(inv));
  }

  void check(Element x) const {
    if (!contains(x)) throw InputError("element " + std::to_string(x) + " is not in " + describe());
    if (table_->size() != order_ * order_) throw InputError("malformed multiplication table");
  }

  Kind kind_;
  std::size_t order_;
  std::shared_ptr<const std::vector<Element>> table_;
  std::shared_ptr<const std::vector<Element>> inverses_;
};

/// Checks the group axioms on a finite table. Names the first violated axiom.
inline Report validate_group(const Group& g) {
  Report r;
  if (!g.is_finite()) return r;
  const std::size_t n = g.order();
  const auto& t = g.entries();
  if (n == 0) {
    r.add("group of order 0");
    return r;
  }
  if (t.size() != n * n) {
    r.add("multiplication table has " + std::to_string(t.size()) + " entries, expected " + std::to_string(n * n));
    return r;
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || static_cast<std::size_t>(t[i]) >= n) {
      r.add("closure: product " + std::to_string(i / n) + "*" + std::to_string(i % n) + " = " +
            std::to_string(t[i]) + " is out of range");
      return r;
    }
  auto mul = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t[a * n + b]); };
  for (std::size_t a = 0; a < n; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) {
      r.add("identity: 0 is not neutral for " + std::to_string(a));
      return r;
    }
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) found = mul(a, b) == 0 && mul(b, a) == 0;
    if (!found) {
      r.add("inverse: element " + std::to_string(a) + " has no inverse");
      return r;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          r.add("associativity: (" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
                " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" + std::to_string(c) + ")");
          return r;
        }
  return r;
}

namespace detail {

inline std::vector<Element> finite_closure(const Group& g, const std::vector<Element>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> members{g.identity()};
  seen[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : gens) {
      Element p = g.multiply(members[i], s);
      if (!seen[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = 1;
        members.push_back(p);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

inline Element gcd_of(const std::vector<Element>& xs) {
  Element d = 0;
  for (Element x : xs) d = std::gcd(d, x < 0 ? -x : x);
  return d;
}

}  // namespace detail

inline std::vector<Element> Group::generators() const {
  if (!is_finite()) return {1};
  std::vector<Element> gens;
  std::vector<Element> current{identity()};
  for (Element x = 1; static_cast<std::size_t>(x) < order_; ++x) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = detail::finite_closure(*this, gens);
    if (current.size() == order_) break;
  }
  return gens;
}

class Subgroup {
 public:
  static Subgroup whole(const Group& g) {
    return g.is_finite() ? Subgroup(g, g.elements(), 0) : Subgroup(g, {}, 1);
  }
  static Subgroup trivial(const Group& g) { return g.is_finite() ? Subgroup(g, {0}, 0) : Subgroup(g, {}, 0); }

  /// Finite parent only. The set is stored sorted; closure is not checked here.
  static Subgroup of_elements(const Group& g, std::vector<Element> members) {
    if (!g.is_finite()) throw InputError("element-set subgroup of an infinite group");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Subgroup(g, std::move(members), 0);
  }

  /// nZ inside Z, n >= 0.
  static Subgroup multiples(const Group& g, Element n) {
    if (g.is_finite()) throw InputError("nZ subgroup of a finite group");
    return Subgroup(g, {}, n < 0 ? -n : n);
  }

  const Group& parent() const { return parent_; }
  const std::vector<Element>& members() const { return members_; }
  Element modulus() const { return modulus_; }

  bool contains(Element x) const {
    if (parent_.is_finite()) return std::binary_search(members_.begin(), members_.end(), x);
    if (modulus_ == 0) return x == 0;
    return x % modulus_ == 0;
  }

  std::optional<std::size_t> order() const {
    if (parent_.is_finite()) return members_.size();
    if (modulus_ == 0) return 1;
    return std::nullopt;
  }

  std::optional<std::size_t> index() const {
    if (parent_.is_finite()) {
      if (members_.empty()) return std::nullopt;
      return parent_.order() / members_.size();
    }
    if (modulus_ == 0) return std::nullopt;
    return static_cast<std::size_t>(modulus_);
  }

  bool is_whole() const { return index() == std::optional<std::size_t>{1}; }

  bool is_subgroup_of(const Subgroup& other) const {
    if (!(parent_ == other.parent_)) return false;
    if (parent_.is_finite())
      return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
    return other.contains(modulus_);
  }

  std::vector<Element> generators() const {
    if (!parent_.is_finite()) return modulus_ == 0 ? std::vector<Element>{} : std::vector<Element>{modulus_};
    std::vector<Element> gens;
    std::vector<Element> current{0};
    for (Element x : members_) {
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      gens.push_back(x);
      current = detail::finite_closure(parent_, gens);
    }
    return gens;
  }

  bool operator==(const Subgroup& other) const {
    return parent_ == other.parent_ && members_ == other.members_ && modulus_ == other.modulus_;
  }

  std::string describe() const {
    if (!parent_.is_finite()) return std::to_string(modulus_) + "Z";
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < members_.size(); ++i) os << (i ? "," : "") << members_[i];
    os << "}";
    return os.str();
  }

 private:
  Subgroup(Group parent, std::vector<Element> members, Element modulus)
      : parent_(std::move(parent)), members_(std::move(members)), modulus_(modulus) {}

  Group parent_;
  std::vector<Element> members_;
  Element modulus_ = 0;
};

inline Report validate_subgroup(const Subgroup& h) {
  Report r;
  const Group& g = h.parent();
  if (!g.is_finite()) {
    if (h.modulus() < 0) r.add("negative modulus");
    return r;
  }
  for (Element x : h.members())
    if (!g.contains(x)) {
      r.add("element " + std::to_string(x) + " is not in the parent group");
      return r;
    }
  if (!h.contains(0)) r.add("subgroup does not contain the identity");
  for (Element a : h.members()) {
    if (!h.contains(g.inverse(a))) {
      r.add("not closed under inverse at " + std::to_string(a));
      return r;
    }
    for (Element b : h.members())
      if (!h.contains(g.multiply(a, b))) {
        r.add("not closed under multiplication at " + std::to_string(a) + "*" + std::to_string(b));
        return r;
      }
  }
  return r;
}

/// Smallest subgroup of g containing gens.
inline Subgroup subgroup_generated(const Group& g, const std::vector<Element>& gens) {
  for (Element x : gens)
    if (!g.contains(x)) throw InputError("generator " + std::to_string(x) + " is not in " + g.describe());
  if (!g.is_finite()) return Subgroup::multiples(g, detail::gcd_of(gens));
  return Subgroup::of_elements(g, detail::finite_closure(g, gens));
}

/// Subgroup generated by h together with extra elements.
inline Subgroup enlarge(const Subgroup& h, const std::vector<Element>& extra) {
  std::vector<Element> gens = h.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return subgroup_generated(h.parent(), gens);
}

class Homomorphism {
 public:
  /// images: the full image list for a finite source (one entry per element id),
  /// or the image of the generator 1 for an infinite cyclic source.
  /// Injectivity is computed.
  Homomorphism(Group source, Group target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    normalize();
    injective_ = compute_injective();
  }

  /// Same, but with a caller-supplied injectivity flag (checked by validate_hom).
  Homomorphism(Group source, Group target, std::vector<Element> images, bool injective_flag)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)),
        injective_(injective_flag) {
    normalize();
  }

  static Homomorphism identity(const Group& g) {
    return Homomorphism(g, g, g.is_finite() ? g.elements() : std::vector<Element>{1});
  }

  static Homomorphism trivial(const Group& source, const Group& target) {
    return Homomorphism(source, target,
                        std::vector<Element>(source.is_finite() ? source.order() : 1, target.identity()));
  }

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }
  bool injective() const { return injective_; }

  Element operator()(Element x) const {
    if (!source_.contains(x)) throw InputError("element " + std::to_string(x) + " is not in the source group");
    if (source_.is_finite()) return images_.at(static_cast<std::size_t>(x));
    return target_.power(images_.at(0), x);
  }

  bool surjective() const {
    if (!target_.is_finite()) return !source_.is_finite() && (images_[0] == 1 || images_[0] == -1);
    return image().members().size() == target_.order();
  }

  Subgroup image() const { return subgroup_generated(target_, images_); }

  /// Some preimage of y, or nullopt when y is not in the image.
  std::optional<Element> preimage(Element y) const {
    if (source_.is_finite()) {
      for (std::size_t x = 0; x < images_.size(); ++x)
        if (images_[x] == y) return static_cast<Element>(x);
      return std::nullopt;
    }
    const Element gen = images_[0];
    if (!target_.is_finite()) {
      if (gen == 0) return y == 0 ? std::optional<Element>(0) : std::nullopt;
      if (y % gen != 0) return std::nullopt;
      return y / gen;
    }
    Element p = target_.identity();
    for (std::size_t k = 0; k <= target_.order(); ++k) {
      if (p == y) return static_cast<Element>(k);
      p = target_.multiply(p, gen);
    }
    return std::nullopt;
  }

  bool operator==(const Homomorphism& other) const {
    return source_ == other.source_ && target_ == other.target_ && images_ == other.images_;
  }

  bool compute_injective() const {
    if (source_.is_finite()) {
      std::set<Element> seen(images_.begin(), images_.end());
      return seen.size() == images_.size();
    }
    if (target_.is_finite()) return false;
    return images_[0] != 0;
  }

 private:
  void normalize() {
    if (source_.is_trivial() && images_.empty()) images_.push_back(target_.identity());
  }

  Group source_;
  Group target_;
  std::vector<Element> images_;
  bool injective_ = false;
};

/// second after first.
inline Homomorphism then(const Homomorphism& first, const Homomorphism& second) {
  if (!(first.target() == second.source())) throw InputError("homomorphisms are not composable");
  std::vector<Element> images;
  if (first.source().is_finite()) {
    for (Element x : first.source().elements()) images.push_back(second(first(x)));
  } else {
    images.push_back(second(first(1)));
  }
  return Homomorphism(first.source(), second.target(), std::move(images));
}

/// x -> k f(x) k^-1.
inline Homomorphism conjugated(const Homomorphism& f, Element k) {
  std::vector<Element> images;
  for (Element y : f.images()) images.push_back(f.target().conjugate(k, y));
  return Homomorphism(f.source(), f.target(), std::move(images));
}

inline Report validate_hom(const Homomorphism& f) {
  Report r;
  const Group& s = f.source();
  const Group& t = f.target();
  const std::size_t expected = s.is_finite() ? s.order() : 1;
  if (f.images().size() != expected) {
    r.add("image list has " + std::to_string(f.images().size()) + " entries, expected " + std::to_string(expected));
    return r;
  }
  for (Element y : f.images())
    if (!t.contains(y)) {
      r.add("image " + std::to_string(y) + " is not in the target group");
      return r;
    }
  if (s.is_finite()) {
    if (f.images()[0] != t.identity()) r.add("identity is not sent to the identity");
    for (Element a : s.elements())
      for (Element b : s.elements())
        if (f(s.multiply(a, b)) != t.multiply(f(a), f(b))) {
          r.add("not multiplicative at " + std::to_string(a) + "*" + std::to_string(b));
          return r;
        }
  }
  if (r.ok() && f.injective() != f.compute_injective())
    r.add(std::string("stored injectivity flag is ") + (f.injective() ? "true" : "false") + " but the map is " +
          (f.compute_injective() ? "injective" : "not injective"));
  return r;
}

/// Left cosets gH of a finite-index subgroup, with the left action of the parent.
class CosetSpace {
 public:
  CosetSpace(Group parent, Subgroup sub) : parent_(std::move(parent)), sub_(std::move(sub)) {
    if (!(sub_.parent() == parent_)) throw InputError("subgroup of a different group");
    if (!parent_.is_finite()) {
      if (sub_.modulus() == 0) throw IndexInfinite("subgroup 0Z has infinite index in Z");
      for (Element k = 0; k < sub_.modulus(); ++k) reps_.push_back(k);
      return;
    }
    const std::size_t n = parent_.order();
    coset_of_.assign(n, npos);
    for (Element x = 0; static_cast<std::size_t>(x) < n; ++x) {
      if (coset_of_[static_cast<std::size_t>(x)] != npos) continue;
      const std::size_t id = reps_.size();
      reps_.push_back(x);
      for (Element h : sub_.members()) coset_of_[static_cast<std::size_t>(parent_.multiply(x, h))] = id;
    }
  }

  const Group& parent() const { return parent_; }
  const Subgroup& subgroup() const { return sub_; }
  std::size_t size() const { return reps_.size(); }
  Element representative(std::size_t c) const { return reps_.at(c); }

  std::size_t coset_of(Element x) const {
    if (!parent_.is_finite()) {
      const Element n = sub_.modulus();
      return static_cast<std::size_t>(((x % n) + n) % n);
    }
    if (!parent_.contains(x)) throw InputError("element " + std::to_string(x) + " is not in the group");
    return coset_of_[static_cast<std::size_t>(x)];
  }

  std::size_t act(Element g, std::size_t c) const { return coset_of(parent_.multiply(g, representative(c))); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Group parent_;
  Subgroup sub_;
  std::vector<Element> reps_;
  std::vector<std::size_t> coset_of_;
};

inline CosetSpace coset_space(const Group& g, const Subgroup& h) { return CosetSpace(g, h); }

/// A subgroup presented as a group of its own, with its inclusion into the parent.
struct RealizedSubgroup {
  Group group;
  Homomorphism embedding;
};

inline RealizedSubgroup realize(const Subgroup& h) {
  const Group& parent = h.parent();
  if (!parent.is_finite()) {
    if (h.modulus() == 0) return {Group::trivial(), Homomorphism::trivial(Group::trivial(), parent)};
    Group z = Group::infinite_cyclic();
    return {z, Homomorphism(z, parent, {h.modulus()})};
  }
  const auto& m = h.members();
  if (m.size() == 1) return {Group::trivial(), Homomorphism::trivial(Group::trivial(), parent)};
  const std::size_t k = m.size();
  std::vector<Element> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Element p = parent.multiply(m[i], m[j]);
      auto it = std::lower_bound(m.begin(), m.end(), p);
      if (it == m.end() || *it != p) throw InputError("subgroup is not closed under multiplication");
      table[i * k + j] = static_cast<Element>(it - m.begin());
    }
  Group sub = Group::table(k, std::move(table));
  return {sub, Homomorphism(sub, parent, m)};
}

/// Length of a strictly increasing chain of subgroups above h; used as a fold budget.
inline std::size_t chain_length_above(const Subgroup& h) {
  if (h.parent().is_finite()) {
    std::size_t index = *h.index();
    std::size_t bits = 0;
    while (index > 1) {
      index >>= 1;
      ++bits;
    }
    return bits;
  }
  Element n = h.modulus();
  if (n == 0) return 63;
  std::size_t count = 0;
  for (Element p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  if (n > 1) ++count;
  return count;
}

}  // namespace gogstar

#endif
