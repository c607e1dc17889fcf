#include "tracegen/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <variant>

namespace tracegen::oracle {

namespace lg = logic;
using ast::Stmt;
using lg::FormulaPtr;
using lg::TermPtr;
using model::ProgramModel;

namespace {

std::string ground_app(const std::string& name,
                       const std::vector<unsigned long long>& args) {
  if (args.empty()) return name;
  std::string s = name + "(";
  for (size_t i = 0; i < args.size(); ++i)
    s += (i ? "," : "") + std::to_string(args[i]);
  return s + ")";
}

// ---- interpreter ----

struct Interp {
  const ast::Program& p;
  const InputValuation& inp;
  const ExecOptions& opts;
  ProgramModel m;
  ExecutionTrace tr;
  VarState st;
  std::map<const Stmt*, unsigned long long> cur;  // active loop iterations

  Interp(const ast::Program& prog, const InputValuation& in,
         const ExecOptions& o)
      : p(prog), inp(in), opts(o), m(prog) {
    tr.input = inp;
    for (const auto& d : p.decls) {
      if (d.is_array()) {
        auto it = inp.arrays.find(d.name);
        tr.lengths[d.name] =
            d.is_const() && it != inp.arrays.end()
                ? static_cast<long long>(it->second.size())
                : 0;
        if (!d.is_const()) st.arrays[d.name] = {};
      } else if (!d.is_const()) {
        auto it = inp.ints.find(d.name);
        st.ints[d.name] = it != inp.ints.end() ? it->second : 0;
      }
    }
  }

  std::vector<unsigned long long> encl_args(const Stmt* s) const {
    std::vector<unsigned long long> args;
    for (const Stmt* w : m.enclosing_loops(s)) args.push_back(cur.at(w));
    return args;
  }

  void record(const std::string& tp, const char* rule) {
    if (++tr.step_count > opts.step_limit)
      throw StepLimitExceeded("step limit exceeded at " + tp);
    tr.reached.push_back(tp);
    tr.rules.emplace_back(rule);
    tr.reached_set.insert(tp);
    tr.states[tp] = st;
  }

  long long eval(const ast::ExprPtr& e) {
    using K = ast::Expr::Kind;
    switch (e->kind) {
      case K::IntConst:
        return e->value;
      case K::VarRead: {
        const auto* d = p.find_var(e->var);
        if (!d->is_const()) return st.ints.at(e->var);
        auto it = inp.ints.find(e->var);
        return it != inp.ints.end() ? it->second : 0;
      }
      case K::ArrRead: {
        long long idx = eval(e->lhs);
        const auto* d = p.find_var(e->var);
        if (!d->is_const()) {
          const auto& mp = st.arrays.at(e->var);
          auto it = mp.find(idx);
          return it != mp.end() ? it->second : 0;
        }
        auto ai = inp.arrays.find(e->var);
        long long len =
            ai != inp.arrays.end() ? static_cast<long long>(ai->second.size())
                                   : 0;
        if (idx < 0 || idx >= len) {
          if (opts.permissive_reads) return 0;
          throw OutOfBoundsRead("read of " + e->var + "[" +
                                std::to_string(idx) + "], length " +
                                std::to_string(len));
        }
        return ai->second[static_cast<size_t>(idx)];
      }
      case K::Bin: {
        long long a = eval(e->lhs), b = eval(e->rhs);
        switch (e->op) {
          case ast::BinOp::Add: return a + b;
          case ast::BinOp::Sub: return a - b;
          case ast::BinOp::Mul: return a * b;
          default: throw std::logic_error("boolean op in arithmetic eval");
        }
      }
      case K::LengthOf:
        return tr.lengths.at(e->var);
      case K::Not:
        throw std::logic_error("boolean op in arithmetic eval");
    }
    throw std::logic_error("unreachable");
  }

  bool evalb(const ast::ExprPtr& e) {
    using B = ast::BinOp;
    if (e->kind == ast::Expr::Kind::Not) return !evalb(e->lhs);
    switch (e->op) {
      case B::And: return evalb(e->lhs) && evalb(e->rhs);
      case B::Or: return evalb(e->lhs) || evalb(e->rhs);
      case B::Lt: return eval(e->lhs) < eval(e->rhs);
      case B::Le: return eval(e->lhs) <= eval(e->rhs);
      case B::Gt: return eval(e->lhs) > eval(e->rhs);
      case B::Ge: return eval(e->lhs) >= eval(e->rhs);
      case B::Eq: return eval(e->lhs) == eval(e->rhs);
      case B::Ne: return eval(e->lhs) != eval(e->rhs);
      default: throw std::logic_error("arithmetic op in boolean eval");
    }
  }

  void run_context(const ast::Context& ctx) {
    for (const auto& s : ctx.stmts) run_stmt(s.get());
  }

  void run_stmt(const Stmt* s) {
    switch (s->kind) {
      case Stmt::Kind::Skip:
        record(ground_app(m.loc_name(s), encl_args(s)), "skip");
        return;
      case Stmt::Kind::IntAssign:
        record(ground_app(m.loc_name(s), encl_args(s)), "asg");
        st.ints[s->target] = eval(s->expr);
        return;
      case Stmt::Kind::ArrAssign: {
        record(ground_app(m.loc_name(s), encl_args(s)), "asg_arr");
        long long idx = eval(s->index);
        st.arrays[s->target][idx] = eval(s->expr);
        return;
      }
      case Stmt::Kind::IfElse: {
        bool c = evalb(s->cond);
        record(ground_app(m.loc_name(s), encl_args(s)), c ? "ite_T" : "ite_F");
        run_context(c ? s->then_ctx : s->else_ctx);
        return;
      }
      case Stmt::Kind::While: {
        auto base = encl_args(s);
        unsigned long long it = 0;
        while (true) {
          auto args = base;
          args.push_back(it);
          bool c = evalb(s->cond);
          record(ground_app(m.loc_name(s), args), c ? "while_T" : "while_F");
          if (!c) break;
          cur[s] = it;
          run_context(s->then_ctx);
          cur.erase(s);
          ++it;
        }
        tr.last_iterations[ground_app(m.last_it_name(s), base)] = it;
        tr.max_iter = std::max(tr.max_iter, it);
        return;
      }
    }
  }

  ExecutionTrace run() {
    run_context(p.body);
    record("l_end", "end");
    tr.terminated = true;
    return std::move(tr);
  }
};

// ---- bounded evaluator ----

using TV = std::variant<long long, std::string>;

long long num(const TV& v) { return std::get<long long>(v); }

struct Ev {
  const ExecutionTrace& tr;
  const EvalDomains& dom;
  std::map<std::string, TV> env;

  TV ev(const TermPtr& t) {
    using K = lg::Term::Kind;
    switch (t->kind) {
      case K::Var:
        return env.at(t->name);
      case K::Zero:
        return 0LL;
      case K::Suc:
        return num(ev(t->args[0])) + 1;
      case K::Pred: {
        long long v = num(ev(t->args[0]));
        return v > 0 ? v - 1 : 0;
      }
      case K::IntConst:
        return t->value;
      case K::IntBin: {
        long long a = num(ev(t->args[0])), b = num(ev(t->args[1]));
        switch (t->op) {
          case lg::IntOp::Add: return a + b;
          case lg::IntOp::Sub: return a - b;
          case lg::IntOp::Mul: return a * b;
        }
        return 0LL;
      }
      case K::LocApp:
      case K::LastItApp: {
        std::vector<unsigned long long> args;
        for (const auto& a : t->args)
          args.push_back(static_cast<unsigned long long>(num(ev(a))));
        std::string g = ground_app(t->name, args);
        if (t->kind == K::LocApp) return g;
        auto it = tr.last_iterations.find(g);
        // loops that were never entered default to 0 iterations
        return it != tr.last_iterations.end()
                   ? static_cast<long long>(it->second)
                   : 0LL;
      }
      case K::VarApp: {
        if (t->var_is_const) {
          if (!t->var_is_array) {
            auto it = tr.input.ints.find(t->name);
            return it != tr.input.ints.end() ? it->second : 0LL;
          }
          long long pos = num(ev(t->args[0]));
          auto it = tr.input.arrays.find(t->name);
          if (it == tr.input.arrays.end()) return 0LL;
          const auto& vec = it->second;
          if (pos < 0 || pos >= static_cast<long long>(vec.size()))
            return 0LL;  // arbitrary-extension default
          return vec[static_cast<size_t>(pos)];
        }
        std::string tp = std::get<std::string>(ev(t->args[0]));
        auto si = tr.states.find(tp);
        if (si == tr.states.end()) return 0LL;  // unreached timepoint
        if (!t->var_is_array) {
          auto it = si->second.ints.find(t->name);
          return it != si->second.ints.end() ? it->second : 0LL;
        }
        long long pos = num(ev(t->args[1]));
        auto ai = si->second.arrays.find(t->name);
        if (ai == si->second.arrays.end()) return 0LL;
        auto vi = ai->second.find(pos);
        return vi != ai->second.end() ? vi->second : 0LL;
      }
      case K::LengthConst: {
        auto it = tr.lengths.find(t->name);
        return it != tr.lengths.end() ? it->second : 0LL;
      }
    }
    throw std::logic_error("unreachable");
  }

  bool cmp_eq(const TV& a, const TV& b) {
    if (a.index() != b.index()) return false;
    if (a.index() == 0) return num(a) == num(b);
    return std::get<std::string>(a) == std::get<std::string>(b);
  }

  bool quantified(const FormulaPtr& f, size_t bi, bool universal) {
    if (bi == f->binders.size()) return evf(f->sub[0]);
    const auto& b = f->binders[bi];
    auto saved = env.find(b.name) != env.end()
                     ? std::optional<TV>(env[b.name])
                     : std::nullopt;
    auto try_one = [&](TV v) {
      env[b.name] = std::move(v);
      return quantified(f, bi + 1, universal);
    };
    bool result = universal;
    switch (b.sort) {
      case lg::Sort::Nat:
        for (unsigned long long v = 0; v <= dom.nat_bound; ++v)
          if (try_one(static_cast<long long>(v)) != universal) {
            result = !universal;
            break;
          }
        break;
      case lg::Sort::Int:
        for (long long v : dom.int_window)
          if (try_one(v) != universal) {
            result = !universal;
            break;
          }
        break;
      case lg::Sort::Time:
        for (const auto& tp : dom.time_domain)
          if (try_one(tp) != universal) {
            result = !universal;
            break;
          }
        break;
      case lg::Sort::Bool:
        throw std::logic_error("boolean binder");
    }
    if (saved)
      env[b.name] = *saved;
    else
      env.erase(b.name);
    return result;
  }

  bool evf(const FormulaPtr& f) {
    using K = lg::Formula::Kind;
    switch (f->kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Eq: return cmp_eq(ev(f->terms[0]), ev(f->terms[1]));
      case K::NatLeq:
        return num(ev(f->terms[0])) <= num(ev(f->terms[1]));
      case K::IntCmp: {
        long long a = num(ev(f->terms[0])), b = num(ev(f->terms[1]));
        switch (f->cmp) {
          case lg::CmpOp::Lt: return a < b;
          case lg::CmpOp::Le: return a <= b;
          case lg::CmpOp::Gt: return a > b;
          case lg::CmpOp::Ge: return a >= b;
        }
        return false;
      }
      case K::Reach:
        return tr.reached_set.count(
                   std::get<std::string>(ev(f->terms[0]))) > 0;
      case K::Not:
        return !evf(f->sub[0]);
      case K::And:
        for (const auto& s : f->sub)
          if (!evf(s)) return false;
        return true;
      case K::Or:
        for (const auto& s : f->sub)
          if (evf(s)) return true;
        return false;
      case K::Implies:
        return !evf(f->sub[0]) || evf(f->sub[1]);
      case K::Iff:
        return evf(f->sub[0]) == evf(f->sub[1]);
      case K::Forall:
        return quantified(f, 0, true);
      case K::Exists:
        return quantified(f, 0, false);
    }
    throw std::logic_error("unreachable");
  }
};

void ground_tuples(const model::Signature::FuncSym& loc,
                   unsigned long long bound,
                   std::vector<unsigned long long>& args,
                   std::vector<std::string>& out) {
  if (args.size() == loc.nat_arity) {
    out.push_back(ground_app(loc.name, args));
    return;
  }
  for (unsigned long long v = 0; v <= bound; ++v) {
    args.push_back(v);
    ground_tuples(loc, bound, args, out);
    args.pop_back();
  }
}

}  // namespace

std::string InputValuation::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : ints) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  for (const auto& [k, vs] : arrays) {
    os << (first ? "" : " ") << k << "=[";
    for (size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
    os << "]";
    first = false;
  }
  return first ? "(empty)" : os.str();
}

ExecutionTrace execute(const ast::Program& p, const InputValuation& inp,
                       const ExecOptions& opts) {
  return Interp(p, inp, opts).run();
}

std::string trace_dump(const ExecutionTrace& tr) {
  std::ostringstream os;
  for (size_t i = 0; i < tr.reached.size(); ++i) {
    os << tr.reached[i] << " " << tr.rules[i];
    const auto& st = tr.states.at(tr.reached[i]);
    for (const auto& [k, v] : st.ints) os << " " << k << "=" << v;
    for (const auto& [k, mp] : st.arrays)
      for (const auto& [pos, v] : mp)
        os << " " << k << "[" << pos << "]=" << v;
    os << "\n";
  }
  return os.str();
}

EvalDomains make_domains(const model::Signature& sig,
                         const ExecutionTrace& tr) {
  EvalDomains dom;
  dom.nat_bound = tr.max_iter + 2;

  std::set<long long> window;
  long long max_len = 0;
  for (const auto& [k, v] : tr.lengths) max_len = std::max(max_len, v);
  for (long long v = -2; v <= max_len + 2; ++v) window.insert(v);
  for (const auto& [k, v] : tr.input.ints) window.insert(v);
  for (const auto& [k, vs] : tr.input.arrays)
    for (long long v : vs) window.insert(v);
  for (const auto& [tp, st] : tr.states) {
    for (const auto& [k, v] : st.ints) window.insert(v);
    for (const auto& [k, mp] : st.arrays)
      for (const auto& [pos, v] : mp) {
        window.insert(pos);
        window.insert(v);
      }
  }
  dom.int_window.assign(window.begin(), window.end());

  for (const auto& loc : sig.locations) {
    std::vector<unsigned long long> args;
    ground_tuples(loc, dom.nat_bound, args, dom.time_domain);
  }
  return dom;
}

EvalResult eval_formula(const FormulaPtr& f, const ExecutionTrace& tr,
                        const EvalDomains& dom) {
  Ev e{tr, dom, {}};
  return e.evf(f) ? EvalResult::True : EvalResult::False;
}

CheckReport check_task(const sem::VerificationTask& task,
                       const std::vector<ExecutionTrace>& traces) {
  CheckReport rep;
  for (const auto& tr : traces) {
    EvalDomains dom = make_domains(task.signature, tr);
    for (const auto* group :
         {&task.theory_axioms, &task.semantics_axioms, &task.reach_axioms,
          &task.lemma_instances}) {
      for (const auto& lf : *group) {
        ++rep.checks;
        if (eval_formula(lf.formula, tr, dom) != EvalResult::True)
          rep.violations.push_back({lf.label, tr.input.describe()});
      }
    }
    ++rep.checks;
    if (eval_formula(task.conjecture.formula, tr, dom) != EvalResult::True)
      rep.conjecture_failures.push_back(
          {task.conjecture.label, tr.input.describe()});
  }
  return rep;
}

std::vector<Violation> check_reach_facts(const ast::Program& p,
                                         const ExecutionTrace& tr) {
  std::vector<Violation> out;
  if (!tr.terminated) return out;
  ProgramModel m(p);
  EvalDomains dom = make_domains(m.signature(), tr);
  Ev ev{tr, dom, {}};

  // enumerate groundings of the enclosing iteration variables
  for (const Stmt* s : m.statements()) {
    const auto& encl = m.enclosing_loops(s);
    std::vector<unsigned long long> vals(encl.size(), 0);
    while (true) {
      ev.env.clear();
      for (size_t i = 0; i < encl.size(); ++i)
        ev.env[m.iter_var(encl[i])->name] =
            static_cast<long long>(vals[i]);
      auto ground = [&](const TermPtr& t) {
        return std::get<std::string>(ev.ev(t));
      };
      std::string start = ground(m.start_of(s));
      if (tr.reached_set.count(start)) {
        if (s->is_while()) {
          // every iteration up to lastIt is visited
          long long n = num(ev.ev(m.last_it(s)));
          for (long long it = 0; it <= n; ++it) {
            ev.env[m.iter_var(s)->name] = it;
            if (!tr.reached_set.count(ground(m.tp(s, m.iter_var(s)))))
              out.push_back({"lemma1-iters-" + m.loc_name(s),
                             tr.input.describe()});
          }
          ev.env[m.iter_var(s)->name] = n;
        }
        if (!tr.reached_set.count(ground(m.end_of(s))))
          out.push_back({"lemma1-end-" + m.loc_name(s), tr.input.describe()});
      }
      // advance the grounding odometer
      size_t i = 0;
      for (; i < vals.size(); ++i) {
        if (vals[i] < dom.nat_bound) {
          ++vals[i];
          break;
        }
        vals[i] = 0;
      }
      if (i == vals.size()) break;
    }
  }
  return out;
}

std::vector<InputValuation> sample_inputs(const ast::Program& p, int count,
                                          unsigned seed,
                                          const SampleBounds& bounds) {
  std::vector<InputValuation> out;
  if (count <= 0) return out;

  out.emplace_back();  // all-empty / all-zero boundary

  if (count > 1) {
    InputValuation v;
    for (const auto& d : p.decls)
      if (d.is_array() && d.is_const())
        v.arrays[d.name] =
            std::vector<long long>(static_cast<size_t>(bounds.max_len), 0);
    out.push_back(std::move(v));
  }

  // rng()% keeps the sequence identical across platforms, unlike
  // std::uniform_int_distribution
  std::mt19937 rng(seed);
  auto rnd = [&](long long lo, long long hi) {
    return lo + static_cast<long long>(
                    rng() % static_cast<unsigned long long>(hi - lo + 1));
  };
  while (static_cast<int>(out.size()) < count) {
    InputValuation v;
    for (const auto& d : p.decls) {
      if (!d.is_const()) continue;
      if (d.is_array()) {
        auto len = static_cast<size_t>(rnd(0, bounds.max_len));
        std::vector<long long> vals(len);
        for (auto& x : vals) x = rnd(bounds.val_lo, bounds.val_hi);
        v.arrays[d.name] = std::move(vals);
      } else {
        v.ints[d.name] = rnd(bounds.val_lo, bounds.val_hi);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace tracegen::oracle
