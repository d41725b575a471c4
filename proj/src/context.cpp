#include "e2p/context.hpp"

#include <algorithm>
#include <sstream>

namespace e2p {

int name_index(const std::string& name) {
  size_t e = name.size();
  size_t s = e;
  while (s > 0 && std::isdigit(static_cast<unsigned char>(name[s - 1]))) s--;
  if (s == e || s == 0) return -1;  // no digits, or digits only
  try {
    unsigned long v = std::stoul(name.substr(s));
    if (v > 1000000000ul) return -1;
    return static_cast<int>(v);
  } catch (...) {
    return -1;
  }
}

namespace {
const std::string* entry_decl_name(const ContextEntry& e) {
  if (const auto* d = std::get_if<DomainDecl>(&e)) return &d->name;
  if (const auto* h = std::get_if<HypDecl>(&e)) return &h->name;
  return nullptr;
}
}  // namespace

Context::Context(std::vector<ContextEntry> entries) {
  for (auto& e : entries) append(std::move(e));
}

void Context::append(ContextEntry e) {
  if (const auto* d = std::get_if<DomainDecl>(&e)) {
    next_dom_ = std::max(next_dom_, name_index(d->name) + 1);
  } else if (const auto* h = std::get_if<HypDecl>(&e)) {
    next_ev_ = std::max(next_ev_, name_index(h->name) + 1);
  }
  entries_.push_back(std::move(e));
}

std::optional<Formula> Context::hyp_type(const std::string& name) const {
  for (const auto& e : entries_)
    if (const auto* h = std::get_if<HypDecl>(&e))
      if (h->name == name) return h->type;
  return std::nullopt;
}

bool Context::has_domain(const std::string& name) const {
  for (const auto& e : entries_)
    if (const auto* d = std::get_if<DomainDecl>(&e))
      if (d->name == name) return true;
  return false;
}

bool Context::declares(const std::string& name) const {
  return decl_position(name).has_value();
}

std::optional<size_t> Context::decl_position(const std::string& name) const {
  for (size_t i = 0; i < entries_.size(); i++) {
    const std::string* n = entry_decl_name(entries_[i]);
    if (n && *n == name) return i;
  }
  return std::nullopt;
}

std::optional<Pattern> Context::const_constraint(const std::string& fn) const {
  for (const auto& e : entries_)
    if (const auto* c = std::get_if<ConstConstraint>(&e))
      if (c->fn == fn) return c->body;
  return std::nullopt;
}

std::optional<Pattern> Context::ap_constraint(const std::string& fn, const std::string& arg) const {
  for (const auto& e : entries_)
    if (const auto* c = std::get_if<ApConstraint>(&e))
      if (c->fn == fn && c->arg == arg) return c->body;
  return std::nullopt;
}

std::string Context::fresh_evidence_var() { return "v" + std::to_string(next_ev_++); }
std::string Context::fresh_domain_var() { return "d" + std::to_string(next_dom_++); }

namespace {
void scan_names(const Term& t, int& ev, int& dom) {
  auto consider = [&ev, &dom](const std::string& n) {
    int ix = name_index(n);
    if (ix < 0) return;
    if (n[0] == 'v') ev = std::max(ev, ix + 1);
    if (n[0] == 'd') dom = std::max(dom, ix + 1);
  };
  switch (t.kind()) {
    case TKind::Var: consider(t.name()); return;
    case TKind::Stuck: return;
    case TKind::Pair:
    case TKind::CbvPair:
      scan_names(t.first(), ev, dom);
      scan_names(t.second(), ev, dom);
      return;
    case TKind::Inl:
    case TKind::Inr: scan_names(t.inner(), ev, dom); return;
    case TKind::Lam:
      consider(t.bound());
      scan_names(t.body(), ev, dom);
      return;
    case TKind::Ap:
    case TKind::CbvAp:
      scan_names(t.fun(), ev, dom);
      scan_names(t.arg(), ev, dom);
      return;
    case TKind::Spread:
      consider(t.var1());
      consider(t.var2());
      scan_names(t.scrut(), ev, dom);
      scan_names(t.body(), ev, dom);
      return;
    case TKind::Decide:
      consider(t.var1());
      consider(t.var2());
      scan_names(t.scrut(), ev, dom);
      scan_names(t.left(), ev, dom);
      scan_names(t.right(), ev, dom);
      return;
  }
}
}  // namespace

void Context::reserve_indices_from(const Term& t) { scan_names(t, next_ev_, next_dom_); }

void Context::absorb_counters(const Context& other) {
  next_ev_ = std::max(next_ev_, other.next_ev_);
  next_dom_ = std::max(next_dom_, other.next_dom_);
}

// ---------------------------------------------------------------------------
// Well-formedness.

namespace {

// nullopt = pattern fits the type; otherwise an error message.
std::optional<std::string> pattern_fits(const Context& h, const Pattern& p, const Formula& type) {
  switch (p.kind()) {
    case PKind::Var: {
      if (auto t = h.hyp_type(p.name())) {
        if (!alpha_equal(*t, type))
          return "variable " + p.name() + " has type " + to_string(*t) + ", expected " +
                 to_string(type);
        return std::nullopt;
      }
      if (h.has_domain(p.name())) return "domain variable " + p.name() + " used at formula type";
      return "undeclared pattern variable " + p.name();
    }
    case PKind::Pair: {
      if (type.is(FKind::And)) {
        if (auto e = pattern_fits(h, p.first(), type.left())) return e;
        return pattern_fits(h, p.second(), type.right());
      }
      if (type.is(FKind::Ex)) {
        if (p.first().kind() != PKind::Var || !h.has_domain(p.first().name()))
          return "existential witness in pattern must be a declared domain variable";
        Formula inst = subst_domain_var(type.body(), type.bound(), p.first().name());
        return pattern_fits(h, p.second(), inst);
      }
      return "pair pattern against " + to_string(type);
    }
    case PKind::Inl:
      if (!type.is(FKind::Or)) return "inl pattern against " + to_string(type);
      return pattern_fits(h, p.inner(), type.left());
    case PKind::Inr:
      if (!type.is(FKind::Or)) return "inr pattern against " + to_string(type);
      return pattern_fits(h, p.inner(), type.right());
  }
  return std::nullopt;
}

std::optional<Violation> check_constraint_strat(const Context& h, size_t at,
                                                const std::string& fn, const Pattern& body) {
  int i = name_index(fn);
  for (const auto& v : pattern_vars(body)) {
    if (h.has_domain(v)) continue;  // only evidence variables are stratified
    int j = name_index(v);
    if (i >= j)
      return Violation{ViolationKind::StratificationBreach, at,
                       "constraint on " + fn + " mentions " + v + " (" + std::to_string(i) +
                           " < " + std::to_string(j) + " fails)"};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> check_wellformed(const Context& h) {
  std::vector<std::string> domains_seen;

  for (size_t i = 0; i < h.entries().size(); i++) {
    const ContextEntry& e = h.entries()[i];

    if (const auto* d = std::get_if<DomainDecl>(&e)) {
      domains_seen.push_back(d->name);
      continue;
    }

    if (const auto* hd = std::get_if<HypDecl>(&e)) {
      for (const auto& fv : free_domain_vars(hd->type)) {
        if (std::find(domains_seen.begin(), domains_seen.end(), fv) == domains_seen.end())
          return Violation{ViolationKind::UndeclaredVariable, i,
                           "type of " + hd->name + " mentions undeclared " + fv};
      }
      continue;
    }

    if (const auto* c = std::get_if<ConstConstraint>(&e)) {
      auto t = h.hyp_type(c->fn);
      if (!t)
        return Violation{ViolationKind::UndeclaredVariable, i, "constraint on undeclared " + c->fn};
      if (!t->is(FKind::Imp))
        return Violation{ViolationKind::PatternTypeMismatch, i,
                         c->fn + " is constrained as a constant function but has type " +
                             to_string(*t)};
      for (size_t j = 0; j < i; j++) {
        if (const auto* o = std::get_if<ConstConstraint>(&h.entries()[j]))
          if (o->fn == c->fn)
            return Violation{ViolationKind::DuplicateConstraint, i,
                             "second const constraint on " + c->fn};
      }
      if (auto v = check_constraint_strat(h, i, c->fn, c->body)) return v;
      if (auto err = pattern_fits(h, c->body, t->right()))
        return Violation{ViolationKind::PatternTypeMismatch, i, *err};
      continue;
    }

    const auto* a = std::get_if<ApConstraint>(&e);
    auto t = h.hyp_type(a->fn);
    if (!t)
      return Violation{ViolationKind::UndeclaredVariable, i, "constraint on undeclared " + a->fn};
    if (!t->is(FKind::All))
      return Violation{ViolationKind::PatternTypeMismatch, i,
                       a->fn + " is applied to a domain element but has type " + to_string(*t)};
    if (!h.has_domain(a->arg))
      return Violation{ViolationKind::UndeclaredVariable, i,
                       "constraint argument " + a->arg + " is not a declared domain variable"};
    for (size_t j = 0; j < i; j++) {
      if (const auto* o = std::get_if<ApConstraint>(&h.entries()[j]))
        if (o->fn == a->fn && o->arg == a->arg)
          return Violation{ViolationKind::DuplicateConstraint, i,
                           "second constraint on cbv(" + a->fn + "; " + a->arg + ")"};
    }
    if (auto v = check_constraint_strat(h, i, a->fn, a->body)) return v;
    Formula inst = subst_domain_var(t->body(), t->bound(), a->arg);
    if (auto err = pattern_fits(h, a->body, inst))
      return Violation{ViolationKind::PatternTypeMismatch, i, *err};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pattern substitution into structures.

std::vector<ContextEntry> infer_pattern_decls(const Pattern& p, const Formula& type) {
  std::vector<ContextEntry> out;
  switch (p.kind()) {
    case PKind::Var:
      out.push_back(HypDecl{p.name(), type});
      return out;
    case PKind::Pair: {
      if (type.is(FKind::And)) {
        auto l = infer_pattern_decls(p.first(), type.left());
        auto r = infer_pattern_decls(p.second(), type.right());
        out.insert(out.end(), l.begin(), l.end());
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
      if (type.is(FKind::Ex)) {
        if (p.first().kind() != PKind::Var)
          throw IncompatiblePattern("existential witness in pattern must be a variable");
        out.push_back(DomainDecl{p.first().name()});
        Formula inst = subst_domain_var(type.body(), type.bound(), p.first().name());
        auto r = infer_pattern_decls(p.second(), inst);
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
      throw IncompatiblePattern("pair pattern cannot inhabit " + to_string(type));
    }
    case PKind::Inl:
      if (!type.is(FKind::Or))
        throw IncompatiblePattern("inl pattern cannot inhabit " + to_string(type));
      return infer_pattern_decls(p.inner(), type.left());
    case PKind::Inr:
      if (!type.is(FKind::Or))
        throw IncompatiblePattern("inr pattern cannot inhabit " + to_string(type));
      return infer_pattern_decls(p.inner(), type.right());
  }
  return out;
}

EvidenceStructure subst_in_structure(const EvidenceStructure& s, const std::string& v,
                                     const Pattern& p) {
  auto pos = s.context.decl_position(v);
  if (!pos) throw IncompatiblePattern("substituted variable " + v + " is not declared");
  const auto* decl = std::get_if<HypDecl>(&s.context.entries()[*pos]);
  if (!decl) throw IncompatiblePattern(v + " is a domain variable, not an evidence variable");

  std::vector<ContextEntry> spliced = infer_pattern_decls(p, decl->type);

  Context out;
  for (size_t i = 0; i < s.context.entries().size(); i++) {
    if (i == *pos) {
      for (auto& e : spliced) out.append(e);
      continue;
    }
    ContextEntry e = s.context.entries()[i];
    if (auto* c = std::get_if<ConstConstraint>(&e)) c->body = subst_pattern_var(c->body, v, p);
    if (auto* a = std::get_if<ApConstraint>(&e)) a->body = subst_pattern_var(a->body, v, p);
    out.append(std::move(e));
  }
  out.absorb_counters(s.context);

  Term evd = subst_term(s.evidence, v, pattern_to_term(p));
  return EvidenceStructure{std::move(out), s.goal, std::move(evd)};
}

// ---------------------------------------------------------------------------

std::string to_string(const ContextEntry& e) {
  std::ostringstream os;
  if (const auto* d = std::get_if<DomainDecl>(&e)) {
    os << d->name << ":D";
  } else if (const auto* h = std::get_if<HypDecl>(&e)) {
    os << h->name << ":" << to_string(h->type);
  } else if (const auto* c = std::get_if<ConstConstraint>(&e)) {
    os << c->fn << " = const(" << to_string(c->body) << ")";
  } else if (const auto* a = std::get_if<ApConstraint>(&e)) {
    os << "cbv(" << a->fn << "; " << a->arg << ") = " << to_string(a->body);
  }
  return os.str();
}

std::string to_string(const Context& h) {
  std::ostringstream os;
  for (size_t i = 0; i < h.entries().size(); i++) {
    if (i) os << "; ";
    os << to_string(h.entries()[i]);
  }
  return os.str();
}

}  // namespace e2p
