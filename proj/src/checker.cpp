#include "ccheck/checker.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>

namespace ccheck {

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Valid: return "valid";
    case VerdictStatus::Invalid: return "invalid";
    case VerdictStatus::PreconditionUnprovable: return "precondition_unprovable";
    case VerdictStatus::InfeasibleCall: return "infeasible_call";
    case VerdictStatus::ResourceLimit: return "resource_limit";
    case VerdictStatus::BoundsTooSmall: return "bounds_too_small";
  }
  return "?";
}

std::string_view to_string(FailureKind k) {
  switch (k) {
    case FailureKind::Postcondition: return "postcondition";
    case FailureKind::CalleePrecondition: return "callee_precondition";
    case FailureKind::InfeasibleCall: return "infeasible_call";
  }
  return "?";
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CCHECK_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

std::vector<const DriverVerdict*> CompletenessReport::all() const {
  std::vector<const DriverVerdict*> out;
  for (const auto* list : {&axioms, &equivalence, &well_definedness})
    for (const auto& v : *list) out.push_back(&v);
  return out;
}

namespace {

std::string call_text(const Call& c, const SpecDriver& d) {
  std::string s = c.creation ? "create " : "";
  s += d.objects.at(std::size_t(c.target)).name + "." + c.feature;
  if (!c.args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) s += (i ? ", " : "") + to_string(c.args[i]);
    s += ")";
  }
  return s;
}

std::string clause_text(const Clause& c) {
  return (c.label.empty() ? "" : c.label + ": ") + to_string(c.expr);
}

// Restricted growth strings: every set partition of n objects, in
// lexicographic order (all aliased first).
std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(std::size_t(n), 0);
  auto rec = [&](auto&& self, int i, int max_block) -> void {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      a[std::size_t(i)] = b;
      self(self, i + 1, std::max(max_block, b));
    }
  };
  if (n == 0)
    out.push_back({});
  else
    rec(rec, 0, -1);
  return out;
}

int domain_size(const Param& p, const Bounds& b) { return p.type == ValueType::Bool ? 2 : b.k; }

Value domain_value(const Param& p, int i) {
  return p.type == ValueType::Bool ? Value::boolean(i != 0) : Value::element(i);
}

struct JobResult {
  long long environments = 0;
  long long leaves = 0;
  long long pruned = 0;
  VerdictStatus worst = VerdictStatus::Valid;
  std::optional<Counterexample> cex;
};

class Kernel {
 public:
  Kernel(const SpecDriver& d, const StateSpace& space, const CheckOptions& opt)
      : d_(d), space_(space), cls_(*space.cls), opt_(opt) {
    for (std::size_t i = 0; i < d.objects.size(); ++i)
      (d.objects[i].created ? created_ : free_).push_back(int(i));
    parts_ = partitions(int(free_.size()));
    param_combos_ = 1;
    for (const auto& p : d.params) param_combos_ *= domain_size(p, space.bounds);
    const long long n = (long long)space.size();
    for (const auto& p : parts_) {
      int blocks = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
      long long count = param_combos_;
      for (int i = 0; i < blocks; ++i) count *= n;
      prefix_.push_back(total_);
      total_ += count;
    }
    if (space.has_model()) nkeys_ = *std::max_element(space.model_key.begin(), space.model_key.end()) + 1;
    if (!cls_.model_fields.empty()) {
      try {
        wider_ = state_space(cls_, {space.bounds.k, space.bounds.len + 1});
      } catch (const Error&) {
        wider_ = StateSpace{};
      }
    }
    for (const auto& c : d.body) {
      int f = cls_.feature_index(c.feature);
      if (!tables_.count(f)) tables_[f] = build_table(f);
    }
  }

  long long jobs() const { return total_; }

  JobResult run(long long job, std::atomic<long long>& leaves, std::atomic<bool>& abort) const {
    Frame fr;
    fr.result = {};
    decode(job, fr);
    if (!admit_initial(fr)) return fr.result;
    fr.result.environments = 1;
    fr.leaves = &leaves;
    fr.abort = &abort;
    explore(fr, 0);
    return std::move(fr.result);
  }

  // Decodes the initial environment of `job` and tests it against the
  // driver precondition only.
  bool environment(long long job) const {
    Frame fr;
    decode(job, fr);
    return admit_initial(fr);
  }

 private:
  struct Table {
    int arity = 0;
    std::vector<int> radix;
    int combos = 1;
    std::vector<std::vector<int>> entries;  // [(pre + 1) * combos + argcode]
    std::vector<std::uint8_t> overflow;     // entry empty only within the bounds
  };

  struct Frame {
    std::vector<int> bindings;
    std::vector<const ObjectState*> now;
    std::vector<const ObjectState*> initial;
    std::vector<Value> params;
    std::vector<const ObjectState*> path;
    std::vector<int> key_owner;
    std::vector<int> key_refs;
    std::atomic<long long>* leaves = nullptr;
    std::atomic<bool>* abort = nullptr;
    JobResult result;
  };

  const SpecDriver& d_;
  const StateSpace& space_;
  const ContractClass& cls_;
  CheckOptions opt_;
  std::vector<int> free_;
  std::vector<int> created_;
  std::vector<std::vector<int>> parts_;
  std::vector<long long> prefix_;
  long long total_ = 0;
  long long param_combos_ = 1;
  int nkeys_ = 0;
  std::map<int, Table> tables_;
  std::optional<StateSpace> wider_;  // one more model element than the bounds allow

  Table build_table(int fi) const {
    const Feature& f = cls_.features[std::size_t(fi)];
    Table t;
    t.arity = int(f.params.size());
    for (const auto& p : f.params) {
      t.radix.push_back(domain_size(p, space_.bounds));
      t.combos *= t.radix.back();
    }
    t.entries.resize(std::size_t(space_.size() + 1) * std::size_t(t.combos));
    std::vector<Value> args(f.params.size());
    for (int pre = -1; pre < int(space_.size()); ++pre) {
      for (int code = 0; code < t.combos; ++code) {
        int rest = code;
        for (int i = t.arity - 1; i >= 0; --i) {
          args[std::size_t(i)] = domain_value(f.params[std::size_t(i)], rest % t.radix[std::size_t(i)]);
          rest /= t.radix[std::size_t(i)];
        }
        const ObjectState* from = pre < 0 ? nullptr : &space_.states[std::size_t(pre)];
        std::size_t at = std::size_t(pre + 1) * std::size_t(t.combos) + std::size_t(code);
        t.entries[at] = candidates(f, from, args);
        if (t.entries[at].empty()) {
          if (t.overflow.empty()) t.overflow.assign(t.entries.size(), 0);
          t.overflow[at] = overflows(f, from, args);
        }
      }
    }
    return t;
  }

  // True if some state one model element beyond the bounds satisfies the
  // postcondition of f.
  bool overflows(const Feature& f, const ObjectState* pre, const std::vector<Value>& args) const {
    if (cls_.model_fields.empty()) return false;
    for (const auto& s : wider_->states) {
      if (within_bounds(s, cls_, space_.bounds)) continue;
      const ObjectState* now[1] = {&s};
      const ObjectState* before[1] = {pre};
      EvalContext ctx;
      ctx.cls = &cls_;
      ctx.now = now;
      ctx.before = before;
      ctx.params = args;
      ctx.current = 0;
      if (std::all_of(f.ensure.begin(), f.ensure.end(), [&](const Clause& c) { return holds(c.expr, ctx); }))
        return true;
    }
    return false;
  }

  std::vector<int> candidates(const Feature& f, const ObjectState* pre, const std::vector<Value>& args) const {
    std::vector<int> out;
    for (const auto& s : space_.states) {
      const ObjectState* now[1] = {&s};
      const ObjectState* before[1] = {pre};
      EvalContext ctx;
      ctx.cls = &cls_;
      ctx.space = &space_;
      ctx.now = now;
      ctx.before = before;
      ctx.params = args;
      ctx.current = 0;
      bool ok = std::all_of(f.ensure.begin(), f.ensure.end(),
                            [&](const Clause& c) { return holds(c.expr, ctx); });
      if (ok) out.push_back(s.id);
    }
    return out;
  }

  const std::vector<int>* lookup(int fi, const ObjectState* pre, const std::vector<Value>& args,
                                 std::vector<int>& scratch, bool& overflow) const {
    const Table& t = tables_.at(fi);
    int code = 0;
    bool cached = true;
    for (int i = 0; i < t.arity; ++i) {
      const Value& v = args[std::size_t(i)];
      int digit = int(v.scalar);
      if (v.is_undefined() || digit < 0 || digit >= t.radix[std::size_t(i)]) cached = false;
      code = code * t.radix[std::size_t(i)] + digit;
    }
    if (cached && (!pre || pre->id >= 0)) {
      int row = pre ? pre->id + 1 : 0;
      std::size_t at = std::size_t(row) * std::size_t(t.combos) + std::size_t(code);
      overflow = !t.overflow.empty() && t.overflow[at];
      return &t.entries[at];
    }
    scratch = candidates(cls_.features[std::size_t(fi)], pre, args);
    overflow = scratch.empty() && overflows(cls_.features[std::size_t(fi)], pre, args);
    return &scratch;
  }

  void decode(long long job, Frame& fr) const {
    std::size_t p = std::size_t(std::upper_bound(prefix_.begin(), prefix_.end(), job) - prefix_.begin()) - 1;
    long long rem = job - prefix_[p];
    const auto& part = parts_[p];
    int blocks = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
    long long state_code = rem / param_combos_;
    long long param_code = rem % param_combos_;

    std::size_t nid = std::size_t(blocks) + created_.size();
    fr.bindings.assign(d_.objects.size(), -1);
    fr.now.assign(nid, nullptr);
    for (std::size_t i = 0; i < free_.size(); ++i) fr.bindings[std::size_t(free_[i])] = part[i];
    for (std::size_t i = 0; i < created_.size(); ++i) fr.bindings[std::size_t(created_[i])] = blocks + int(i);
    const long long n = (long long)space_.size();
    for (int b = blocks - 1; b >= 0; --b) {
      fr.now[std::size_t(b)] = &space_.states[std::size_t(state_code % n)];
      state_code /= n;
    }
    fr.params.assign(d_.params.size(), Value{});
    for (int i = int(d_.params.size()) - 1; i >= 0; --i) {
      int r = domain_size(d_.params[std::size_t(i)], space_.bounds);
      fr.params[std::size_t(i)] = domain_value(d_.params[std::size_t(i)], int(param_code % r));
      param_code /= r;
    }
    fr.initial = fr.now;
    fr.key_owner.assign(std::size_t(nkeys_), -1);
    fr.key_refs.assign(std::size_t(nkeys_), 0);
  }

  // Within one execution, states with the same model value are the same
  // state.
  bool claim(Frame& fr, const ObjectState* s) const {
    if (!nkeys_ || !s) return true;
    std::size_t key = std::size_t(space_.model_key[std::size_t(s->id)]);
    if (fr.key_refs[key] && fr.key_owner[key] != s->id) return false;
    fr.key_owner[key] = s->id;
    ++fr.key_refs[key];
    return true;
  }

  void release(Frame& fr, const ObjectState* s) const {
    if (!nkeys_ || !s) return;
    --fr.key_refs[std::size_t(space_.model_key[std::size_t(s->id)])];
  }

  EvalContext driver_ctx(Frame& fr) const {
    EvalContext ctx;
    ctx.cls = &cls_;
    ctx.space = &space_;
    ctx.now = fr.now;
    ctx.before = fr.now;
    ctx.bindings = fr.bindings;
    ctx.params = fr.params;
    return ctx;
  }

  bool admit_initial(Frame& fr) const {
    for (const ObjectState* s : fr.now)
      if (!claim(fr, s)) return false;
    EvalContext ctx = driver_ctx(fr);
    return std::all_of(d_.pre.begin(), d_.pre.end(), [&](const Expr& e) { return holds(e, ctx); });
  }

  void leaf(Frame& fr) const {
    ++fr.result.leaves;
    if (fr.leaves->fetch_add(1, std::memory_order_relaxed) + 1 > opt_.branch_cap)
      fr.abort->store(true, std::memory_order_relaxed);
  }

  void record(Frame& fr, VerdictStatus sev, FailureKind kind, int index, std::string clause) const {
    if (sev <= fr.result.worst) return;
    fr.result.worst = sev;
    Counterexample c;
    c.driver = d_.name;
    c.bounds = space_.bounds;
    c.identities = fr.bindings;
    c.params = fr.params;
    for (const ObjectState* s : fr.initial)
      c.initial.push_back(s ? std::optional<ObjectState>(*s) : std::nullopt);
    for (const ObjectState* s : fr.path) c.steps.push_back(*s);
    c.kind = kind;
    c.index = index;
    c.clause = std::move(clause);
    fr.result.cex = std::move(c);
  }

  void explore(Frame& fr, std::size_t i) const {
    if (fr.abort->load(std::memory_order_relaxed)) return;
    if (i == d_.body.size()) {
      leaf(fr);
      EvalContext ctx = driver_ctx(fr);
      for (std::size_t j = 0; j < d_.post.size(); ++j)
        if (!holds(d_.post[j], ctx)) {
          record(fr, VerdictStatus::Invalid, FailureKind::Postcondition, int(j), to_string(d_.post[j]));
          break;
        }
      return;
    }
    const Call& call = d_.body[i];
    const int fi = cls_.feature_index(call.feature);
    const Feature& f = cls_.features[std::size_t(fi)];
    const int id = fr.bindings[std::size_t(call.target)];
    const ObjectState* pre = fr.now[std::size_t(id)];

    std::vector<Value> args;
    {
      EvalContext ctx = driver_ctx(fr);
      for (const auto& a : call.args) args.push_back(eval_expr(a, ctx));
    }
    if (!call.creation && !pre) {
      leaf(fr);
      record(fr, VerdictStatus::PreconditionUnprovable, FailureKind::CalleePrecondition, int(i),
             d_.objects[std::size_t(call.target)].name + " is not created");
      return;
    }
    {
      EvalContext ctx = driver_ctx(fr);
      ctx.bindings = {};
      ctx.params = args;
      ctx.current = id;
      for (const auto& c : f.require)
        if (!holds(c.expr, ctx)) {
          leaf(fr);
          record(fr, VerdictStatus::PreconditionUnprovable, FailureKind::CalleePrecondition, int(i),
                 clause_text(c));
          return;
        }
    }
    std::vector<int> scratch;
    bool overflow = false;
    const std::vector<int>* cands = lookup(fi, call.creation ? nullptr : pre, args, scratch, overflow);
    if (overflow) {
      leaf(fr);
      ++fr.result.pruned;
      return;
    }
    if (cands->empty()) {
      leaf(fr);
      record(fr, VerdictStatus::InfeasibleCall, FailureKind::InfeasibleCall, int(i),
             f.name + " postcondition");
      return;
    }
    bool any = false;
    for (int s : *cands) {
      const ObjectState* post = &space_.states[std::size_t(s)];
      if (!claim(fr, post)) continue;
      any = true;
      fr.now[std::size_t(id)] = post;
      fr.path.push_back(post);
      explore(fr, i + 1);
      fr.path.pop_back();
      fr.now[std::size_t(id)] = pre;
      release(fr, post);
      if (fr.abort->load(std::memory_order_relaxed)) return;
    }
    if (!any) leaf(fr);
  }
};

bool better(const JobResult& a, long long ja, const JobResult& b, long long jb) {
  if (a.worst != b.worst) return a.worst > b.worst;
  return ja < jb;
}

DriverVerdict finish(const SpecDriver& d, const Kernel& k, const StateSpace& space, const CheckOptions& opt,
                     long long envs, long long leaves, long long pruned, bool aborted,
                     std::optional<JobResult> best) {
  DriverVerdict v;
  v.driver = d.name;
  v.family = d.family;
  if (aborted) {
    long long count = 0;
    for (long long j = 0; j < k.jobs(); ++j) count += k.environment(j);
    v.status = VerdictStatus::ResourceLimit;
    v.stats = {count, opt.branch_cap, 0};
    return v;
  }
  v.stats = {envs, leaves, pruned};
  if (best && best->worst != VerdictStatus::Valid) {
    v.status = best->worst;
    v.counterexample = std::move(best->cex);
    v.counterexample->narrative = narrate(*v.counterexample, d, *space.cls);
  }
  v.vacuous = v.status == VerdictStatus::Valid && leaves == pruned;
  return v;
}

}  // namespace

DriverVerdict check_driver_serial(const SpecDriver& d, const StateSpace& space, const CheckOptions& opt) {
  Kernel k(d, space, opt);
  std::atomic<long long> leaves{0};
  std::atomic<bool> abort{false};
  long long envs = 0;
  long long pruned = 0;
  std::optional<JobResult> best;
  long long best_job = -1;
  for (long long j = 0; j < k.jobs() && !abort; ++j) {
    JobResult r = k.run(j, leaves, abort);
    envs += r.environments;
    pruned += r.pruned;
    if (r.worst != VerdictStatus::Valid && (!best || better(r, j, *best, best_job))) {
      best = std::move(r);
      best_job = j;
    }
  }
  return finish(d, k, space, opt, envs, leaves.load(), pruned, abort.load(), std::move(best));
}

DriverVerdict check_driver(const SpecDriver& d, const StateSpace& space, const CheckOptions& opt) {
  Kernel k(d, space, opt);
  std::atomic<long long> leaves{0};
  std::atomic<bool> abort{false};
  long long envs = 0;
  long long pruned = 0;
  std::optional<JobResult> best;
  long long best_job = -1;
  const long long jobs = k.jobs();

#pragma omp parallel num_threads(effective_threads(opt.threads))
  {
    long long local_envs = 0;
    long long local_pruned = 0;
    std::optional<JobResult> local;
    long long local_job = -1;
#pragma omp for schedule(dynamic, 64) nowait
    for (long long j = 0; j < jobs; ++j) {
      if (abort.load(std::memory_order_relaxed)) continue;
      JobResult r = k.run(j, leaves, abort);
      local_envs += r.environments;
      local_pruned += r.pruned;
      if (r.worst != VerdictStatus::Valid && (!local || better(r, j, *local, local_job))) {
        local = std::move(r);
        local_job = j;
      }
    }
#pragma omp critical(ccheck_merge)
    {
      envs += local_envs;
      pruned += local_pruned;
      if (local && (!best || better(*local, local_job, *best, best_job))) {
        best = std::move(local);
        best_job = local_job;
      }
    }
  }
  return finish(d, k, space, opt, envs, leaves.load(), pruned, abort.load(), std::move(best));
}

DriverVerdict check_driver(const SpecDriver& d, const ContractClass& cls, const CheckOptions& opt) {
  try {
    StateSpace space = state_space(cls, opt.bounds);
    return check_driver(d, space, opt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyStateSpace) throw;
    DriverVerdict v;
    v.driver = d.name;
    v.family = d.family;
    v.status = VerdictStatus::BoundsTooSmall;
    return v;
  }
}

CompletenessReport check_completeness(const AdtSpec& adt, const ContractClass& cls, const CheckOptions& opt) {
  return check_completeness(adt, cls, generate_drivers(adt, cls), opt);
}

CompletenessReport check_completeness(const AdtSpec& adt, const ContractClass& cls, const DriverSuite& suite,
                                      const CheckOptions& opt) {
  CompletenessReport r;
  r.adt = adt.name;
  r.cls = cls.name;
  r.bounds = opt.bounds;
  r.equivalence_required = suite.equivalence_required;

  std::optional<StateSpace> space;
  try {
    space = state_space(cls, opt.bounds);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyStateSpace) throw;
  }
  auto run = [&](const DriverSet& set, std::vector<DriverVerdict>& out) {
    for (const auto& d : set) {
      if (space) {
        out.push_back(check_driver(d, *space, opt));
      } else {
        DriverVerdict v;
        v.driver = d.name;
        v.family = d.family;
        v.status = VerdictStatus::BoundsTooSmall;
        out.push_back(std::move(v));
      }
    }
  };
  run(suite.axioms, r.axioms);
  run(suite.equivalence, r.equivalence);
  run(suite.well_definedness, r.well_definedness);

  auto all_valid = [](const std::vector<DriverVerdict>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](const DriverVerdict& v) { return v.status == VerdictStatus::Valid; });
  };
  r.correct = all_valid(r.axioms) && (!r.equivalence_required || all_valid(r.equivalence));
  r.well_defined = all_valid(r.well_definedness);
  r.complete = r.correct && r.well_defined;
  return r;
}

namespace {

[[noreturn]] void stale(const std::string& why) { throw Error(ErrorCode::StaleTrace, why); }

void check_admissible(const ObjectState& s, const ContractClass& cls, Bounds bounds, const std::string& what) {
  if (s.slots.size() != cls.components().size()) stale(what + " does not match the components of " + cls.name);
  ObjectState n = s;
  normalize_state(cls, n);
  if (!(n == s) || !satisfies_definitions(cls, s) || !within_bounds(s, cls, bounds))
    stale(what + " " + to_string(s, cls) + " is not admissible at k=" + std::to_string(bounds.k) +
          ", L=" + std::to_string(bounds.len));
}

bool ensures(const Feature& f, const ContractClass& cls, const ObjectState* pre, const ObjectState& post,
             const std::vector<Value>& args) {
  const ObjectState* now[1] = {&post};
  const ObjectState* before[1] = {pre};
  EvalContext ctx;
  ctx.cls = &cls;
  ctx.now = now;
  ctx.before = before;
  ctx.params = args;
  ctx.current = 0;
  return std::all_of(f.ensure.begin(), f.ensure.end(), [&](const Clause& c) { return holds(c.expr, ctx); });
}

bool model_consistent(const std::vector<const ObjectState*>& seen, const ContractClass& cls) {
  if (cls.model_fields.empty()) return true;
  const std::size_t m = cls.model_fields.size();
  for (std::size_t a = 0; a < seen.size(); ++a)
    for (std::size_t b = a + 1; b < seen.size(); ++b) {
      if (!seen[a] || !seen[b]) continue;
      bool same_model = std::equal(seen[a]->slots.begin(), seen[a]->slots.begin() + long(m), seen[b]->slots.begin());
      if (same_model && !(*seen[a] == *seen[b])) return false;
    }
  return true;
}

}  // namespace

bool replay_counterexample(const Counterexample& cex, const SpecDriver& d, const ContractClass& cls, Bounds bounds) {
  if (cex.identities.size() != d.objects.size()) stale("trace objects do not match driver " + d.name);
  if (cex.params.size() != d.params.size()) stale("trace parameters do not match driver " + d.name);
  if (cex.steps.size() > d.body.size()) stale("trace has more steps than driver " + d.name + " has calls");
  const std::size_t nid = cex.initial.size();
  for (std::size_t o = 0; o < d.objects.size(); ++o) {
    int id = cex.identities[o];
    if (id < 0 || std::size_t(id) >= nid) stale("identity of " + d.objects[o].name + " out of range");
    bool unborn = !cex.initial[std::size_t(id)].has_value();
    if (unborn != d.objects[o].created) stale("initial state of " + d.objects[o].name + " does not match its declaration");
    if (d.objects[o].created)
      for (std::size_t p = 0; p < d.objects.size(); ++p)
        if (p != o && cex.identities[p] == id) stale("created object " + d.objects[o].name + " is aliased");
  }
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    const Value& v = cex.params[i];
    bool ok = d.params[i].type == ValueType::Bool ? v.kind == Value::Kind::Bool
                                                  : v.kind == Value::Kind::Elem && v.scalar >= 0 && v.scalar < bounds.k;
    if (!ok) stale("parameter " + d.params[i].name + " is outside the domain");
  }
  for (std::size_t i = 0; i < nid; ++i)
    if (cex.initial[i]) check_admissible(*cex.initial[i], cls, bounds, "initial state #" + std::to_string(i));
  for (std::size_t i = 0; i < cex.steps.size(); ++i)
    check_admissible(cex.steps[i], cls, bounds, "post-state of call " + std::to_string(i + 1));

  std::vector<const ObjectState*> now(nid, nullptr);
  for (std::size_t i = 0; i < nid; ++i)
    if (cex.initial[i]) now[i] = &*cex.initial[i];
  std::vector<const ObjectState*> seen = now;
  for (const auto& s : cex.steps) seen.push_back(&s);
  if (!model_consistent(seen, cls)) return false;

  auto ctx_for = [&]() {
    EvalContext ctx;
    ctx.cls = &cls;
    ctx.now = now;
    ctx.before = now;
    ctx.bindings = cex.identities;
    ctx.params = cex.params;
    return ctx;
  };
  {
    EvalContext ctx = ctx_for();
    for (const auto& e : d.pre)
      if (!holds(e, ctx)) return false;
  }

  // Executes call i up to its precondition; false if the precondition fails.
  auto enter = [&](std::size_t i, std::vector<Value>& args) {
    const Call& call = d.body[i];
    EvalContext ctx = ctx_for();
    args.clear();
    for (const auto& a : call.args) args.push_back(eval_expr(a, ctx));
    int id = cex.identities[std::size_t(call.target)];
    if (!call.creation && !now[std::size_t(id)]) return false;
    const Feature* f = cls.find_feature(call.feature);
    if (!f) stale("class " + cls.name + " has no feature " + call.feature);
    EvalContext pc = ctx_for();
    pc.bindings = {};
    pc.params = args;
    pc.current = id;
    return std::all_of(f->require.begin(), f->require.end(), [&](const Clause& c) { return holds(c.expr, pc); });
  };

  std::vector<Value> args;
  for (std::size_t i = 0; i < cex.steps.size(); ++i) {
    if (!enter(i, args)) return false;
    const Call& call = d.body[i];
    int id = cex.identities[std::size_t(call.target)];
    const ObjectState* pre = call.creation ? nullptr : now[std::size_t(id)];
    if (!ensures(*cls.find_feature(call.feature), cls, pre, cex.steps[i], args)) return false;
    now[std::size_t(id)] = &cex.steps[i];
  }

  switch (cex.kind) {
    case FailureKind::Postcondition: {
      if (cex.steps.size() != d.body.size()) return false;
      if (cex.index < 0 || std::size_t(cex.index) >= d.post.size()) return false;
      EvalContext ctx = ctx_for();
      return !holds(d.post[std::size_t(cex.index)], ctx);
    }
    case FailureKind::CalleePrecondition:
      if (std::size_t(cex.index) != cex.steps.size() || cex.steps.size() >= d.body.size()) return false;
      return !enter(cex.steps.size(), args);
    case FailureKind::InfeasibleCall: {
      if (std::size_t(cex.index) != cex.steps.size() || cex.steps.size() >= d.body.size()) return false;
      if (!enter(cex.steps.size(), args)) return false;
      const Call& call = d.body[cex.steps.size()];
      const ObjectState* pre = call.creation ? nullptr : now[std::size_t(cex.identities[std::size_t(call.target)])];
      StateSpace space;
      try {
        space = state_space(cls, cls.model_fields.empty() ? bounds : Bounds{bounds.k, bounds.len + 1});
      } catch (const Error&) {
        stale("no admissible states at these bounds");
      }
      // States one element past the length bound count too: a call they
      // satisfy is cut by the bound, not infeasible.
      const Feature& f = *cls.find_feature(call.feature);
      return std::none_of(space.states.begin(), space.states.end(),
                          [&](const ObjectState& s) { return ensures(f, cls, pre, s, args); });
    }
  }
  return false;
}

std::vector<std::string> narrate(const Counterexample& cex, const SpecDriver& d, const ContractClass& cls) {
  std::vector<std::string> out;
  out.push_back("driver " + d.name + " at k=" + std::to_string(cex.bounds.k) + ", L=" + std::to_string(cex.bounds.len));
  std::string objs = "objects:";
  for (std::size_t o = 0; o < d.objects.size() && o < cex.identities.size(); ++o)
    objs += (o ? ", " : " ") + d.objects[o].name + " = #" + std::to_string(cex.identities[o]);
  out.push_back(objs);
  if (!d.params.empty()) {
    std::string ps = "params:";
    for (std::size_t i = 0; i < d.params.size() && i < cex.params.size(); ++i)
      ps += (i ? ", " : " ") + d.params[i].name + " = " + to_string(cex.params[i]);
    out.push_back(ps);
  }
  for (std::size_t i = 0; i < cex.initial.size(); ++i)
    out.push_back("initial #" + std::to_string(i) + ": " +
                  (cex.initial[i] ? to_string(*cex.initial[i], cls) : std::string("not created")));
  std::vector<std::optional<ObjectState>> now = cex.initial;
  for (std::size_t i = 0; i < cex.steps.size() && i < d.body.size(); ++i) {
    const Call& c = d.body[i];
    const std::size_t id = std::size_t(cex.identities[std::size_t(c.target)]);
    const std::string before = id < now.size() && now[id] ? to_string(*now[id], cls) : std::string("not created");
    out.push_back("call " + std::to_string(i + 1) + ": " + call_text(c, d) + " takes #" + std::to_string(id) +
                  " from " + before + " to " + to_string(cex.steps[i], cls));
    if (id < now.size()) now[id] = cex.steps[i];
  }
  const std::string at = cex.index >= 0 && std::size_t(cex.index) < d.body.size()
                             ? "call " + std::to_string(cex.index + 1) + ": " + call_text(d.body[std::size_t(cex.index)], d)
                             : std::string("call");
  switch (cex.kind) {
    case FailureKind::Postcondition: out.push_back("post " + cex.clause + " violated"); break;
    case FailureKind::CalleePrecondition: out.push_back(at + " precondition " + cex.clause + " violated"); break;
    case FailureKind::InfeasibleCall: out.push_back(at + " has no post-state satisfying its postcondition"); break;
  }
  return out;
}

}  // namespace ccheck
