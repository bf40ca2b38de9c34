#include "oracle.hpp"

#include <algorithm>
#include <functional>

namespace oracle {

using namespace ccheck;

namespace {

std::vector<std::vector<int>> sequences(int k, int len) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (int(out[i].size()) < len)
      for (int e = 0; e < k; ++e) {
        auto s = out[i];
        s.push_back(e);
        out.push_back(s);
      }
  return out;
}

bool all_hold(const std::vector<Clause>& cs, EvalContext& ctx) {
  for (const auto& c : cs)
    if (!holds(c.expr, ctx)) return false;
  return true;
}

EvalContext single(const ContractClass& cls, const ObjectState* now[1], const ObjectState* before[1]) {
  EvalContext ctx;
  ctx.cls = &cls;
  ctx.now = std::span<const ObjectState* const>(now, 1);
  ctx.before = std::span<const ObjectState* const>(before, 1);
  ctx.current = 0;
  return ctx;
}

}  // namespace

std::vector<ObjectState> states(const ContractClass& cls, Bounds b) {
  const auto comps = cls.components();
  std::vector<std::vector<Value>> domains;
  for (const auto& c : comps) {
    std::vector<Value> dom;
    if (c.type == ValueType::Seq)
      for (auto& s : sequences(b.k, b.len)) dom.push_back(Value::sequence(s));
    else if (c.type == ValueType::Bool)
      dom = {Value::boolean(false), Value::boolean(true)};
    else
      for (int e = 0; e < b.k; ++e) dom.push_back(Value::element(e));
    domains.push_back(dom);
  }
  std::vector<ObjectState> out;
  ObjectState s;
  s.slots.resize(comps.size());
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i < comps.size()) {
      for (const auto& v : domains[i]) {
        s.slots[i] = v;
        fill(i + 1);
      }
      return;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << comps.size()); ++mask) {
      s.masked = mask;
      bool ok = true;
      for (std::size_t q = 0; q < comps.size() && ok; ++q) {
        bool masked = (mask >> q) & 1u;
        if (comps[q].is_model) { ok = !masked; continue; }
        const Feature& f = cls.features[std::size_t(comps[q].feature)];
        const ObjectState* now[1] = {&s};
        EvalContext ctx = single(cls, now, now);
        ctx.result = &s.slots[q];
        if (masked == all_hold(f.require, ctx)) ok = false;
        else ok = masked ? s.slots[q] == (comps[q].type == ValueType::Bool ? Value::boolean(false) : Value::element(0))
                         : all_hold(f.ensure, ctx);
      }
      if (ok) out.push_back(s);
    }
  };
  fill(0);
  return out;
}

VerdictStatus verdict(const SpecDriver& d, const ContractClass& cls, Bounds b) {
  const std::vector<ObjectState> all = states(cls, b);
  const std::vector<ObjectState> wider = cls.model_fields.empty() ? std::vector<ObjectState>{} : states(cls, {b.k, b.len + 1});
  const std::size_t m = cls.model_fields.size();
  VerdictStatus worst = VerdictStatus::Valid;
  auto raise = [&](VerdictStatus s) { worst = std::max(worst, s); };

  std::vector<int> free_objs, created;
  for (std::size_t o = 0; o < d.objects.size(); ++o) (d.objects[o].created ? created : free_objs).push_back(int(o));
  const int n = int(free_objs.size());

  std::vector<int> bindings(d.objects.size());
  std::vector<Value> params(d.params.size());
  std::vector<const ObjectState*> now;
  std::vector<const ObjectState*> seen;

  auto consistent = [&]() {
    for (auto* a : seen)
      for (auto* c : seen)
        if (m && std::equal(a->slots.begin(), a->slots.begin() + long(m), c->slots.begin()) && !(*a == *c)) return false;
    return true;
  };
  auto ctx = [&]() {
    EvalContext c;
    c.cls = &cls;
    c.now = now;
    c.before = now;
    c.bindings = bindings;
    c.params = params;
    return c;
  };
  auto ensures = [&](const Feature& f, const ObjectState* pre, const ObjectState& post, const std::vector<Value>& args) {
    const ObjectState* a[1] = {&post};
    const ObjectState* p[1] = {pre};
    EvalContext c = single(cls, a, p);
    c.params = args;
    return all_hold(f.ensure, c);
  };

  std::function<void(std::size_t)> exec = [&](std::size_t i) {
    if (!consistent()) return;
    if (i == d.body.size()) {
      EvalContext c = ctx();
      for (const auto& e : d.post)
        if (!holds(e, c)) raise(VerdictStatus::Invalid);
      return;
    }
    const Call& call = d.body[i];
    const Feature& f = *cls.find_feature(call.feature);
    const int id = bindings[std::size_t(call.target)];
    std::vector<Value> args;
    EvalContext c = ctx();
    for (const auto& a : call.args) args.push_back(eval_expr(a, c));
    if (!call.creation && !now[std::size_t(id)]) return raise(VerdictStatus::PreconditionUnprovable);
    EvalContext pc = ctx();
    pc.current = id;
    pc.params = args;
    if (!all_hold(f.require, pc)) return raise(VerdictStatus::PreconditionUnprovable);
    const ObjectState* pre = call.creation ? nullptr : now[std::size_t(id)];
    const ObjectState* keep = now[std::size_t(id)];
    bool any = false;
    for (const auto& s : all) {
      if (!ensures(f, pre, s, args)) continue;
      any = true;
      now[std::size_t(id)] = &s;
      seen.push_back(&s);
      exec(i + 1);
      seen.pop_back();
      now[std::size_t(id)] = keep;
    }
    if (!any && std::none_of(wider.begin(), wider.end(), [&](const ObjectState& s) { return ensures(f, pre, s, args); }))
      raise(VerdictStatus::InfeasibleCall);
  };

  long long id_codes = 1;
  for (int i = 0; i < n; ++i) id_codes *= n;
  for (long long code = 0; code < id_codes; ++code) {
    long long r = code;
    for (int i = 0; i < n; ++i, r /= n) bindings[std::size_t(free_objs[std::size_t(i)])] = int(r % n);
    for (std::size_t j = 0; j < created.size(); ++j) bindings[std::size_t(created[j])] = n + int(j);
    std::vector<int> used;
    for (int o : free_objs) used.push_back(bindings[std::size_t(o)]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    long long state_codes = 1, param_codes = 1;
    for (std::size_t i = 0; i < used.size(); ++i) state_codes *= (long long)all.size();
    for (const auto& p : d.params) param_codes *= p.type == ValueType::Bool ? 2 : b.k;
    for (long long sc = 0; sc < state_codes; ++sc)
      for (long long pc = 0; pc < param_codes; ++pc) {
        now.assign(std::size_t(n) + created.size(), nullptr);
        seen.clear();
        long long s = sc;
        for (int u : used) {
          now[std::size_t(u)] = &all[std::size_t(s % (long long)all.size())];
          seen.push_back(now[std::size_t(u)]);
          s /= (long long)all.size();
        }
        long long p = pc;
        for (std::size_t i = 0; i < d.params.size(); ++i) {
          int r2 = d.params[i].type == ValueType::Bool ? 2 : b.k;
          params[i] = d.params[i].type == ValueType::Bool ? Value::boolean(p % r2) : Value::element(int(p % r2));
          p /= r2;
        }
        if (!consistent()) continue;
        EvalContext c = ctx();
        if (std::all_of(d.pre.begin(), d.pre.end(), [&](const Expr& e) { return holds(e, c); })) exec(0);
      }
  }
  return worst;
}

}  // namespace oracle
