#pragma once

// Formulas, sequents, the size measure and fragment classification for the
// Lambek calculus with a relevant modality.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace lambek {

// Interned identifier. Equality and ordering are by name; interning makes
// equality a pointer compare. Names starting with '#' are reserved for
// generated atoms and cannot be produced by the surface syntax.
class Atom {
 public:
  Atom() : name_(nullptr) {}

  static Atom intern(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
    static std::unordered_set<std::string> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, _] = table.emplace(name);
    return Atom(&*it);
  }

  const std::string& name() const { return *name_; }
  bool generated() const { return (*name_)[0] == '#'; }

  friend bool operator==(Atom a, Atom b) { return a.name_ == b.name_; }
  friend bool operator!=(Atom a, Atom b) { return a.name_ != b.name_; }
  friend bool operator<(Atom a, Atom b) {
    return a.name_ != b.name_ && *a.name_ < *b.name_;
  }

 private:
  explicit Atom(const std::string* p) : name_(p) {}
  const std::string* name_;
};

// Counter-backed source of atoms guaranteed distinct from anything the
// parser can produce.
class FreshAtoms {
 public:
  Atom next(std::string_view stem) {
    return Atom::intern("#" + std::string(stem) + std::to_string(counter_++));
  }
  Atom named(std::string_view full) {
    std::string s = "#" + std::string(full);
    return Atom::intern(s);
  }

 private:
  std::uint64_t counter_ = 0;
};

enum class Conn : std::uint8_t { Var, Over, Under, Bang };

// Immutable formula tree. Over(b, a) is written b/a (numerator left),
// Under(a, b) is written a\b (numerator right). Structural equality is
// syntactic identity; shared subtrees give a pointer fast path.
class Formula {
  struct Node;
  using Ptr = std::shared_ptr<const Node>;
  struct Node {
    Conn conn;
    Atom atom;     // Var only
    Ptr first;     // Over: numerator, Under: denominator, Bang: body
    Ptr second;    // Over: denominator, Under: numerator
    std::size_t hash;
    int size;
  };

 public:
  static Formula var(Atom a) {
    Node n{Conn::Var, a, nullptr, nullptr, 0, 1};
    n.hash = std::hash<const void*>()(&a.name()) * 31 + 1;
    return Formula(std::make_shared<const Node>(std::move(n)));
  }
  static Formula var(std::string_view name) { return var(Atom::intern(name)); }
  // b/a
  static Formula over(const Formula& numerator, const Formula& denominator) {
    return binary(Conn::Over, numerator.node_, denominator.node_);
  }
  // a\b
  static Formula under(const Formula& denominator, const Formula& numerator) {
    return binary(Conn::Under, denominator.node_, numerator.node_);
  }
  static Formula bang(const Formula& body) {
    Node n{Conn::Bang, Atom(), body.node_, nullptr, 0, body.size() + 1};
    n.hash = body.hash() * 1000003 + 7;
    return Formula(std::make_shared<const Node>(std::move(n)));
  }

  Conn conn() const { return node_->conn; }
  bool is_var() const { return node_->conn == Conn::Var; }
  bool is_over() const { return node_->conn == Conn::Over; }
  bool is_under() const { return node_->conn == Conn::Under; }
  bool is_bang() const { return node_->conn == Conn::Bang; }

  Atom atom() const { return node_->atom; }
  // Over(b/a): numerator b, denominator a. Under(a\b): numerator b,
  // denominator a.
  Formula numerator() const {
    return Formula(is_over() ? node_->first : node_->second);
  }
  Formula denominator() const {
    return Formula(is_over() ? node_->second : node_->first);
  }
  Formula body() const { return Formula(node_->first); }

  int size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& x, const Formula& y) {
    return equal(x.node_.get(), y.node_.get());
  }
  friend bool operator!=(const Formula& x, const Formula& y) { return !(x == y); }
  // Arbitrary but stable total order, used to canonicalize banged blocks.
  friend bool operator<(const Formula& x, const Formula& y) {
    return cmp(x.node_.get(), y.node_.get()) < 0;
  }

 private:
  explicit Formula(Ptr p) : node_(std::move(p)) {}

  static Formula binary(Conn c, const Ptr& first, const Ptr& second) {
    Node n{c, Atom(), first, second, 0, first->size + second->size + 1};
    n.hash = (first->hash * 1000003 + second->hash) * 4 +
             static_cast<std::size_t>(c);
    return Formula(std::make_shared<const Node>(std::move(n)));
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->conn != b->conn || a->hash != b->hash) return false;
    switch (a->conn) {
      case Conn::Var: return a->atom == b->atom;
      case Conn::Bang: return equal(a->first.get(), b->first.get());
      default:
        return equal(a->first.get(), b->first.get()) &&
               equal(a->second.get(), b->second.get());
    }
  }

  static int cmp(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (a->conn != b->conn)
      return static_cast<int>(a->conn) < static_cast<int>(b->conn) ? -1 : 1;
    switch (a->conn) {
      case Conn::Var:
        if (a->atom == b->atom) return 0;
        return a->atom < b->atom ? -1 : 1;
      case Conn::Bang: return cmp(a->first.get(), b->first.get());
      default: {
        int c = cmp(a->first.get(), b->first.get());
        return c != 0 ? c : cmp(a->second.get(), b->second.get());
      }
    }
  }

  Ptr node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Ordered antecedent, single succedent. Antecedent order is significant.
struct Sequent {
  std::vector<Formula> antecedent;
  Formula succedent;

  Sequent(std::vector<Formula> ante, Formula succ)
      : antecedent(std::move(ante)), succedent(std::move(succ)) {}

  int size() const {
    int total = succedent.size();
    for (const auto& f : antecedent) total += f.size();
    return total;
  }

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.succedent == b.succedent && a.antecedent == b.antecedent;
  }
  friend bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    std::size_t h = s.succedent.hash();
    for (const auto& f : s.antecedent) h = h * 1000003 + f.hash();
    return h;
  }
};

struct FragmentFlags {
  bool bang_free = true;
  bool one_division = true;      // only / occurs
  bool bang_on_vars_only = true; // every Bang body is a Var
};

namespace detail {
inline void classify_formula(const Formula& f, FragmentFlags& flags) {
  switch (f.conn()) {
    case Conn::Var: break;
    case Conn::Bang:
      flags.bang_free = false;
      if (!f.body().is_var()) flags.bang_on_vars_only = false;
      classify_formula(f.body(), flags);
      break;
    case Conn::Under:
      flags.one_division = false;
      [[fallthrough]];
    case Conn::Over:
      classify_formula(f.numerator(), flags);
      classify_formula(f.denominator(), flags);
      break;
  }
}
}  // namespace detail

inline FragmentFlags classify(const Formula& f) {
  FragmentFlags flags;
  detail::classify_formula(f, flags);
  return flags;
}

inline FragmentFlags classify(const Sequent& s) {
  FragmentFlags flags;
  for (const auto& f : s.antecedent) detail::classify_formula(f, flags);
  detail::classify_formula(s.succedent, flags);
  return flags;
}

// Collects all distinct subformulas (including the formulas themselves).
inline void subformulas(const Formula& f,
                        std::unordered_set<Formula, FormulaHash>& out) {
  if (!out.insert(f).second) return;
  switch (f.conn()) {
    case Conn::Var: break;
    case Conn::Bang: subformulas(f.body(), out); break;
    default:
      subformulas(f.numerator(), out);
      subformulas(f.denominator(), out);
      break;
  }
}

inline std::unordered_set<Formula, FormulaHash> subformulas(const Sequent& s) {
  std::unordered_set<Formula, FormulaHash> out;
  for (const auto& f : s.antecedent) subformulas(f, out);
  subformulas(s.succedent, out);
  return out;
}

}  // namespace lambek
