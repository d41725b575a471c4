#include "e2p/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "e2p/eval.hpp"

namespace e2p {

struct Value::Node {
  VKind kind;
  int index = 0;
  std::vector<Value> kids;
  std::vector<std::pair<Value, Value>> graph;
};

namespace {
std::shared_ptr<const Value::Node> mkv(Value::Node n) {
  return std::make_shared<const Value::Node>(std::move(n));
}
const std::shared_ptr<const Value::Node>& star_node() {
  static const std::shared_ptr<const Value::Node> n = mkv({VKind::Star, 0, {}, {}});
  return n;
}
}  // namespace

Value::Value() : n_(star_node()) {}
Value Value::star() { return Value(); }
Value Value::token(int i) { return Value(mkv({VKind::Token, i, {}, {}})); }
Value Value::dom(int i) { return Value(mkv({VKind::Dom, i, {}, {}})); }
Value Value::pair(Value l, Value r) {
  return Value(mkv({VKind::Pair, 0, {std::move(l), std::move(r)}, {}}));
}
Value Value::inl(Value v) { return Value(mkv({VKind::Inl, 0, {std::move(v)}, {}})); }
Value Value::inr(Value v) { return Value(mkv({VKind::Inr, 0, {std::move(v)}, {}})); }
Value Value::table(std::vector<std::pair<Value, Value>> graph) {
  return Value(mkv({VKind::Table, 0, {}, std::move(graph)}));
}

VKind Value::kind() const { return n_->kind; }
int Value::index() const {
  assert(kind() == VKind::Token || kind() == VKind::Dom);
  return n_->index;
}
const Value& Value::first() const { assert(kind() == VKind::Pair); return n_->kids[0]; }
const Value& Value::second() const { assert(kind() == VKind::Pair); return n_->kids[1]; }
const Value& Value::inner() const {
  assert(kind() == VKind::Inl || kind() == VKind::Inr);
  return n_->kids[0];
}
const std::vector<std::pair<Value, Value>>& Value::graph() const {
  assert(kind() == VKind::Table);
  return n_->graph;
}

bool Value::operator==(const Value& rhs) const {
  if (n_ == rhs.n_) return true;
  if (kind() != rhs.kind()) return false;
  if (n_->index != rhs.n_->index) return false;
  if (n_->kids.size() != rhs.n_->kids.size() || n_->graph.size() != rhs.n_->graph.size())
    return false;
  for (size_t i = 0; i < n_->kids.size(); i++)
    if (n_->kids[i] != rhs.n_->kids[i]) return false;
  for (size_t i = 0; i < n_->graph.size(); i++)
    if (n_->graph[i].first != rhs.n_->graph[i].first ||
        n_->graph[i].second != rhs.n_->graph[i].second)
      return false;
  return true;
}

bool Value::operator<(const Value& rhs) const {
  if (kind() != rhs.kind()) return kind() < rhs.kind();
  if (n_->index != rhs.n_->index) return n_->index < rhs.n_->index;
  for (size_t i = 0; i < std::min(n_->kids.size(), rhs.n_->kids.size()); i++) {
    if (n_->kids[i] < rhs.n_->kids[i]) return true;
    if (rhs.n_->kids[i] < n_->kids[i]) return false;
  }
  if (n_->kids.size() != rhs.n_->kids.size()) return n_->kids.size() < rhs.n_->kids.size();
  for (size_t i = 0; i < std::min(n_->graph.size(), rhs.n_->graph.size()); i++) {
    if (n_->graph[i].first < rhs.n_->graph[i].first) return true;
    if (rhs.n_->graph[i].first < n_->graph[i].first) return false;
    if (n_->graph[i].second < rhs.n_->graph[i].second) return true;
    if (rhs.n_->graph[i].second < n_->graph[i].second) return false;
  }
  return n_->graph.size() < rhs.n_->graph.size();
}

std::string to_string(const Value& v) {
  std::ostringstream os;
  switch (v.kind()) {
    case VKind::Star: os << "*"; break;
    case VKind::Token: os << "t" << v.index(); break;
    case VKind::Dom: os << "#" << v.index(); break;
    case VKind::Pair: os << "<" << to_string(v.first()) << "," << to_string(v.second()) << ">"; break;
    case VKind::Inl: os << "inl " << to_string(v.inner()); break;
    case VKind::Inr: os << "inr " << to_string(v.inner()); break;
    case VKind::Table: {
      os << "{";
      for (size_t i = 0; i < v.graph().size(); i++) {
        if (i) os << ", ";
        os << to_string(v.graph()[i].first) << "->" << to_string(v.graph()[i].second);
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<Value> FinitaryStructure::atom_set(const std::string& rel,
                                               const std::vector<int>& args) const {
  auto it = atom_cards.find({rel, args});
  if (it != atom_cards.end()) {
    // each cell owns a disjoint token range so distinct atoms get distinct types
    int base = 0;
    for (auto jt = atom_cards.begin(); jt != it; ++jt) base += jt->second;
    std::vector<Value> out;
    out.reserve(it->second);
    for (int i = 0; i < it->second; i++) out.push_back(Value::token(base + i));
    return out;
  }
  if (unit_atoms) return {Value::star()};
  throw std::runtime_error("structure does not interpret " + rel + "/" +
                           std::to_string(args.size()));
}

std::string FinitaryStructure::render() const {
  std::ostringstream os;
  os << "domain=" << domain_size;
  if (unit_atoms && atom_cards.empty()) os << "; atoms=Unit";
  for (const auto& [cell, card] : atom_cards) {
    os << "; " << cell.first;
    if (!cell.second.empty()) {
      os << '(';
      for (size_t i = 0; i < cell.second.size(); i++) {
        if (i) os << ',';
        os << cell.second[i];
      }
      os << ')';
    }
    os << '=' << card;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Type enumeration.

namespace {

constexpr size_t kEnumerationCap = 200000;

int resolve_domain_var(const FinitaryStructure& m, const std::string& name) {
  auto it = m.env.find(name);
  if (it == m.env.end() || it->second.kind() != VKind::Dom)
    throw std::invalid_argument("unbound domain variable " + name);
  return it->second.index();
}

FinitaryStructure with_binding(const FinitaryStructure& m, const std::string& name, Value v) {
  FinitaryStructure out = m;
  out.env[name] = std::move(v);
  return out;
}

// All total tables with the given keys, where values[i] lists the candidates
// for keys[i]. The last key varies fastest.
std::vector<Value> enumerate_tables(const std::vector<Value>& keys,
                                    const std::vector<std::vector<Value>>& values) {
  size_t total = 1;
  for (const auto& vs : values) {
    if (vs.empty()) return {};
    if (total > kEnumerationCap / vs.size())
      throw std::runtime_error("function type too large to enumerate");
    total *= vs.size();
  }
  std::vector<size_t> idx(keys.size(), 0);
  std::vector<Value> out;
  out.reserve(total);
  for (;;) {
    std::vector<std::pair<Value, Value>> graph;
    graph.reserve(keys.size());
    for (size_t i = 0; i < keys.size(); i++) graph.emplace_back(keys[i], values[i][idx[i]]);
    out.push_back(Value::table(std::move(graph)));
    size_t i = keys.size();
    for (;;) {
      if (i == 0) return out;
      i--;
      if (++idx[i] < values[i].size()) break;
      idx[i] = 0;
    }
  }
}

}  // namespace

std::vector<Value> inhabitants(const FinitaryStructure& m, const Formula& phi) {
  switch (phi.kind()) {
    case FKind::False: return {};
    case FKind::Atom: {
      std::vector<int> args;
      args.reserve(phi.args().size());
      for (const auto& a : phi.args()) args.push_back(resolve_domain_var(m, a));
      return m.atom_set(phi.rel(), args);
    }
    case FKind::And: {
      auto l = inhabitants(m, phi.left());
      auto r = inhabitants(m, phi.right());
      if (l.size() * r.size() > kEnumerationCap)
        throw std::runtime_error("product type too large to enumerate");
      std::vector<Value> out;
      out.reserve(l.size() * r.size());
      for (const auto& a : l)
        for (const auto& b : r) out.push_back(Value::pair(a, b));
      return out;
    }
    case FKind::Or: {
      auto l = inhabitants(m, phi.left());
      auto r = inhabitants(m, phi.right());
      std::vector<Value> out;
      out.reserve(l.size() + r.size());
      for (const auto& a : l) out.push_back(Value::inl(a));
      for (const auto& b : r) out.push_back(Value::inr(b));
      return out;
    }
    case FKind::Imp: {
      auto keys = inhabitants(m, phi.left());
      auto vals = inhabitants(m, phi.right());
      std::vector<std::vector<Value>> values(keys.size(), vals);
      if (keys.empty()) return {Value::table({})};
      return enumerate_tables(keys, values);
    }
    case FKind::All: {
      std::vector<Value> keys;
      std::vector<std::vector<Value>> values;
      for (int i = 0; i < m.domain_size; i++) {
        keys.push_back(Value::dom(i));
        values.push_back(inhabitants(with_binding(m, phi.bound(), Value::dom(i)), phi.body()));
      }
      return enumerate_tables(keys, values);
    }
    case FKind::Ex: {
      std::vector<Value> out;
      for (int i = 0; i < m.domain_size; i++) {
        auto body = inhabitants(with_binding(m, phi.bound(), Value::dom(i)), phi.body());
        for (const auto& b : body) out.push_back(Value::pair(Value::dom(i), b));
        if (out.size() > kEnumerationCap)
          throw std::runtime_error("sum type too large to enumerate");
      }
      return out;
    }
  }
  return {};
}

FinitaryStructure unit_structure(const std::vector<std::string>& vars, int k) {
  if (k < static_cast<int>(vars.size()))
    throw std::invalid_argument("domain size " + std::to_string(k) + " cannot embed " +
                                std::to_string(vars.size()) + " variables injectively");
  if (k < 1) throw std::invalid_argument("domain size must be at least 1");
  FinitaryStructure m;
  m.domain_size = k;
  m.unit_atoms = true;
  for (size_t i = 0; i < vars.size(); i++) m.env[vars[i]] = Value::dom(static_cast<int>(i));
  return m;
}

// ---------------------------------------------------------------------------
// Model construction for contexts (reverse index order).

namespace {

Value eval_pattern(const FinitaryStructure& m, const Pattern& p) {
  switch (p.kind()) {
    case PKind::Var: {
      auto it = m.env.find(p.name());
      if (it == m.env.end()) throw std::runtime_error("pattern variable " + p.name() + " unvalued");
      return it->second;
    }
    case PKind::Pair:
      return Value::pair(eval_pattern(m, p.first()), eval_pattern(m, p.second()));
    case PKind::Inl: return Value::inl(eval_pattern(m, p.inner()));
    case PKind::Inr: return Value::inr(eval_pattern(m, p.inner()));
  }
  return Value::star();
}

Value apply_value_table(const Value& table, const Value& key) {
  for (const auto& [k, v] : table.graph())
    if (k == key) return v;
  throw std::runtime_error("table lookup outside domain");
}

}  // namespace

FinitaryStructure model_of_context(const Context& h, int k) {
  if (auto v = check_wellformed(h))
    throw std::runtime_error("context is not well-formed: " + v->message);

  std::vector<std::string> domain_vars;
  for (const auto& e : h.entries())
    if (const auto* d = std::get_if<DomainDecl>(&e)) domain_vars.push_back(d->name);
  if (k <= static_cast<int>(domain_vars.size()))
    throw std::invalid_argument("domain size must exceed the number of domain declarations");

  FinitaryStructure m = unit_structure(domain_vars, k);

  struct Decl { std::string name; Formula type; size_t pos; };
  std::vector<Decl> decls;
  for (size_t i = 0; i < h.entries().size(); i++)
    if (const auto* hd = std::get_if<HypDecl>(&h.entries()[i]))
      decls.push_back({hd->name, hd->type, i});
  std::stable_sort(decls.begin(), decls.end(), [](const Decl& a, const Decl& b) {
    return name_index(a.name) > name_index(b.name);
  });

  for (const auto& d : decls) {
    if (d.type.is(FKind::All)) {
      std::vector<std::pair<Value, Value>> graph;
      for (int e = 0; e < k; e++) {
        std::optional<Value> chosen;
        for (const auto& entry : h.entries()) {
          const auto* a = std::get_if<ApConstraint>(&entry);
          if (!a || a->fn != d.name) continue;
          if (resolve_domain_var(m, a->arg) == e) {
            chosen = eval_pattern(m, a->body);
            break;
          }
        }
        if (!chosen) {
          auto set = inhabitants(with_binding(m, d.type.bound(), Value::dom(e)), d.type.body());
          if (set.empty()) throw std::runtime_error("empty type for " + d.name);
          chosen = set.front();
        }
        graph.emplace_back(Value::dom(e), std::move(*chosen));
      }
      m.env[d.name] = Value::table(std::move(graph));
      continue;
    }
    if (d.type.is(FKind::Imp)) {
      if (auto body = h.const_constraint(d.name)) {
        Value w = eval_pattern(m, *body);
        std::vector<std::pair<Value, Value>> graph;
        for (const auto& a : inhabitants(m, d.type.left())) graph.emplace_back(a, w);
        m.env[d.name] = Value::table(std::move(graph));
        continue;
      }
    }
    auto set = inhabitants(m, d.type);
    if (set.empty()) throw std::runtime_error("empty type for " + d.name);
    m.env[d.name] = set.front();
  }

  // re-evaluate every constraint against the finished model
  for (const auto& e : h.entries()) {
    if (const auto* c = std::get_if<ConstConstraint>(&e)) {
      Value w = eval_pattern(m, c->body);
      const Value& f = m.env.at(c->fn);
      for (const auto& [key, val] : f.graph())
        if (val != w) throw std::runtime_error("const constraint on " + c->fn + " violated");
    } else if (const auto* a = std::get_if<ApConstraint>(&e)) {
      Value expect = eval_pattern(m, a->body);
      Value got = apply_value_table(m.env.at(a->fn), Value::dom(resolve_domain_var(m, a->arg)));
      if (got != expect)
        throw std::runtime_error("forall constraint on " + a->fn + " violated");
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Membership checking.
//
// The term is computed with the untyped small-step evaluator; whenever it
// blocks on a variable carried by the environment, the blocking operator is
// discharged with the variable's semantic value (data values are rendered
// back into constructor syntax, tables are applied by matching the argument
// term against their keys). Fuel exhaustion anywhere aborts as Inconclusive.

namespace {

struct FuelOut {};

struct SemChecker {
  const FinitaryStructure& m0;
  long budget;
  std::map<std::string, Value> reg;
  long fresh = 0;

  explicit SemChecker(const FinitaryStructure& m, long fuel) : m0(m), budget(fuel), reg(m.env) {}

  std::string intern(const Value& v) {
    std::string name = "$" + std::to_string(fresh++);
    reg.emplace(name, v);
    return name;
  }

  // Data values render as constructor terms so that spread/decide/beta
  // redexes fire syntactically; leaf values render as registry variables.
  Term render(const Value& v) {
    switch (v.kind()) {
      case VKind::Pair: return Term::pair(render(v.first()), render(v.second()));
      case VKind::Inl: return Term::inl(render(v.inner()));
      case VKind::Inr: return Term::inr(render(v.inner()));
      default: return Term::var(intern(v));
    }
  }

  struct Head {
    enum class K : uint8_t { Data, Val, Dead } k;
    Term term;   // Data
    Value val;   // Val
  };

  Head compute_head(Term t) {
    for (;;) {
      EvalOutcome out = compute_to_head_budget(std::move(t), budget);
      switch (out.kind) {
        case HeadKind::Canonical: return {Head::K::Data, out.term, Value()};
        case HeadKind::FuelExhausted: throw FuelOut{};
        case HeadKind::Stuck: return {Head::K::Dead, out.term, Value()};
        case HeadKind::PrincipalVariable: break;
      }
      const PrincipalPath& p = *out.principal;
      auto it = reg.find(p.principal.name());
      if (it == reg.end())
        throw std::invalid_argument("free variable " + p.principal.name() +
                                    " is not bound in the environment");
      const Value& val = it->second;

      if (!p.has_parent()) return {Head::K::Val, Term(), val};

      switch (p.parent().kind()) {
        case TKind::Decide:
          if (val.kind() != VKind::Inl && val.kind() != VKind::Inr) return {Head::K::Dead, out.term, Value()};
          t = p.rebuild_principal(render(val));
          break;
        case TKind::Spread:
          if (val.kind() != VKind::Pair) return {Head::K::Dead, out.term, Value()};
          t = p.rebuild_principal(render(val));
          break;
        case TKind::Ap: {
          if (val.kind() != VKind::Table) return {Head::K::Dead, out.term, Value()};
          auto r = apply_table(val, p.parent().arg());
          if (!r) return {Head::K::Dead, out.term, Value()};
          t = p.rebuild_parent(render(*r));
          break;
        }
        case TKind::CbvAp:
          // the argument denotes a value, so the call-by-value barrier is met
          t = p.rebuild_parent(Term::ap(p.parent().fun(), Term::var(p.principal.name())));
          break;
        case TKind::CbvPair:
          t = p.rebuild_parent(Term::pair(Term::var(p.principal.name()), p.parent().second()));
          break;
        default: return {Head::K::Dead, out.term, Value()};
      }
    }
  }

  std::optional<Value> apply_table(const Value& table, const Term& arg) {
    for (const auto& [key, result] : table.graph())
      if (matches(arg, key)) return result;
    return std::nullopt;
  }

  // Does the term evaluate to the given value? Lambdas are compared
  // extensionally against table keys.
  bool matches(const Term& t, const Value& v) {
    Head h = compute_head(t);
    switch (h.k) {
      case Head::K::Dead: return false;
      case Head::K::Val: return h.val == v;
      case Head::K::Data: break;
    }
    const Term& c = h.term;
    switch (v.kind()) {
      case VKind::Pair:
        return c.is(TKind::Pair) && matches(c.first(), v.first()) && matches(c.second(), v.second());
      case VKind::Inl: return c.is(TKind::Inl) && matches(c.inner(), v.inner());
      case VKind::Inr: return c.is(TKind::Inr) && matches(c.inner(), v.inner());
      case VKind::Table: {
        if (!c.is(TKind::Lam)) return false;
        for (const auto& [key, result] : v.graph())
          if (!matches(Term::ap(c, render(key)), result)) return false;
        return true;
      }
      default: return false;  // leaf values only arrive as Val heads
    }
  }

  bool member_of(const Value& v, const FinitaryStructure& m, const Formula& phi) {
    auto set = inhabitants(m, phi);
    return std::find(set.begin(), set.end(), v) != set.end();
  }

  bool check(const FinitaryStructure& m, const Term& t, const Formula& phi) {
    Head h = compute_head(t);
    switch (h.k) {
      case Head::K::Dead: return false;
      case Head::K::Val: return member_of(h.val, m, phi);
      case Head::K::Data: break;
    }
    const Term& c = h.term;
    switch (phi.kind()) {
      case FKind::Atom:
      case FKind::False: return false;  // tokens never arise syntactically
      case FKind::And:
        return c.is(TKind::Pair) && check(m, c.first(), phi.left()) &&
               check(m, c.second(), phi.right());
      case FKind::Or:
        if (c.is(TKind::Inl)) return check(m, c.inner(), phi.left());
        if (c.is(TKind::Inr)) return check(m, c.inner(), phi.right());
        return false;
      case FKind::Imp: {
        if (!c.is(TKind::Lam)) return false;
        for (const auto& a : inhabitants(m, phi.left()))
          if (!check(m, Term::ap(c, render(a)), phi.right())) return false;
        return true;
      }
      case FKind::All: {
        if (!c.is(TKind::Lam)) return false;
        for (int i = 0; i < m.domain_size; i++) {
          FinitaryStructure mi = with_binding(m, phi.bound(), Value::dom(i));
          if (!check(mi, Term::ap(c, render(Value::dom(i))), phi.body())) return false;
        }
        return true;
      }
      case FKind::Ex: {
        if (!c.is(TKind::Pair)) return false;
        Head w = compute_head(c.first());
        if (w.k != Head::K::Val || w.val.kind() != VKind::Dom) return false;
        FinitaryStructure mi = with_binding(m, phi.bound(), w.val);
        return check(mi, c.second(), phi.body());
      }
    }
    return false;
  }
};

}  // namespace

Membership check_membership(const FinitaryStructure& m, const Term& t, const Formula& phi,
                            long fuel) {
  SemChecker chk(m, fuel);
  try {
    return chk.check(m, t, phi) ? Membership::Member : Membership::NotMember;
  } catch (const FuelOut&) {
    return Membership::Inconclusive;
  }
}

// ---------------------------------------------------------------------------

ValidityReport sample_uniform_validity(const Formula& phi, const Term& t, int k_max,
                                       int atom_card_max, long fuel) {
  if (!is_closed(phi)) throw std::invalid_argument("formula must be closed");
  if (!is_minimal(phi)) throw std::invalid_argument("formula must be minimal");

  Language lang = language_of(phi);
  ValidityReport report;
  bool inconclusive = false;

  for (int k = 1; k <= k_max; k++) {
    // all atom cells over a domain of size k
    std::vector<std::pair<std::string, std::vector<int>>> cells;
    for (const auto& [rel, arity] : lang.relations) {
      std::vector<int> tuple(arity, 0);
      for (;;) {
        cells.emplace_back(rel, tuple);
        int i = arity;
        for (;;) {
          if (i == 0) goto next_rel;
          i--;
          if (++tuple[i] < k) break;
          tuple[i] = 0;
        }
      }
    next_rel:;
    }

    std::vector<int> cards(cells.size(), 0);
    for (;;) {
      FinitaryStructure m;
      m.domain_size = k;
      for (size_t i = 0; i < cells.size(); i++) m.atom_cards[cells[i]] = cards[i];

      report.structures_checked++;
      switch (check_membership(m, t, phi, fuel)) {
        case Membership::Member: break;
        case Membership::NotMember:
          report.kind = ValidityReport::Kind::Counterexample;
          report.counterexample = std::move(m);
          return report;
        case Membership::Inconclusive: inconclusive = true; break;
      }

      size_t i = cells.size();
      for (;;) {
        if (i == 0) goto next_k;
        i--;
        if (++cards[i] <= atom_card_max) break;
        cards[i] = 0;
      }
    }
  next_k:;
  }

  report.kind = inconclusive ? ValidityReport::Kind::Inconclusive : ValidityReport::Kind::AllMember;
  return report;
}

}  // namespace e2p
