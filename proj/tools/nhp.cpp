// nhp: law checking, representation, quotients, predicate algebras and
// while-do unrolling over finite models of partial maps.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input or missing
// capability.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nhp/algebra.hpp>
#include <nhp/calg.hpp>
#include <nhp/context.hpp>
#include <nhp/filters.hpp>
#include <nhp/fixtures.hpp>
#include <nhp/io.hpp>
#include <nhp/laws.hpp>
#include <nhp/terms.hpp>

namespace {

  using nhp::io::json;

  struct options {
    std::string   algebra_file;
    std::string   model_file;
    std::string   suite;
    bool          exhaustive = false;
    std::size_t   samples    = nhp::default_samples;
    std::uint64_t seed       = 0;
    unsigned      workers    = 0;
    std::string   partition;
    std::string   out_file;
    bool          as_json = false;
    std::string   ops;
    std::size_t   bound = nhp::default_closure_bound;

    // command-specific
    std::size_t              full_n = 0;
    std::string              term_text;
    std::string              law_name;
    std::vector<std::string> binds;
    std::string              t, alpha, s;
    std::string              example;
  };

  // Input: either a table algebra, or a model closed into one.
  struct input {
    std::optional<nhp::concrete_model> model;
    std::optional<nhp::model_closure>  closure;
    nhp::finite_algebra                algebra;
  };

  nhp::op_set parse_ops(std::string const& text) {
    nhp::op_set       out;
    std::stringstream ss(text);
    std::string       item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) {
        continue;
      }
      auto o = nhp::op_from_name(item);
      if (!o) {
        throw nhp::input_error("unknown operation \"" + item + "\"");
      }
      out.insert(*o);
    }
    return out;
  }

  // Operations the laws of a suite read from tables.
  nhp::op_set suite_ops(nhp::suite const& s) {
    nhp::op_set out;
    for (auto const& name : s.laws) {
      auto const& l = nhp::find_law(name);
      for (auto const* eqs : {&l.premises, &l.conclusions}) {
        for (auto const& e : *eqs) {
          nhp::collect_ops(e.lhs, out);
          nhp::collect_ops(e.rhs, out);
        }
      }
    }
    for (nhp::op o : s.derived.list()) {
      out.erase(o);
    }
    for (nhp::op o : {nhp::op::antidom, nhp::op::bowtie, nhp::op::cup}) {
      out.erase(o);
    }
    return out;
  }

  json read_file(std::string const& path, std::string const& what) {
    if (path == "-") {
      return nhp::io::read_json(std::cin, what);
    }
    std::ifstream in(path);
    if (!in) {
      throw nhp::input_error("cannot open " + path);
    }
    return nhp::io::read_json(in, what);
  }

  input load(options const& o, nhp::op_set default_ops) {
    json j;
    if (!o.algebra_file.empty() && !o.model_file.empty()) {
      throw nhp::input_error("give at most one of --algebra and --model");
    }
    if (!o.algebra_file.empty()) {
      j = read_file(o.algebra_file, "algebra");
      if (nhp::io::kind_of(j) != nhp::io::file_kind::algebra) {
        throw nhp::input_error("--algebra file is not an algebra");
      }
    } else if (!o.model_file.empty()) {
      j = read_file(o.model_file, "model");
      if (nhp::io::kind_of(j) != nhp::io::file_kind::model) {
        throw nhp::input_error("--model file is not a model");
      }
    } else {
      j = nhp::io::read_json(std::cin, "stdin");
    }
    input in;
    switch (nhp::io::kind_of(j)) {
      case nhp::io::file_kind::algebra:
        in.algebra = nhp::io::algebra_from_json(j);
        break;
      case nhp::io::file_kind::model: {
        in.model   = nhp::io::model_from_json(j);
        auto ops   = o.ops.empty() ? default_ops : parse_ops(o.ops);
        in.closure = nhp::from_model(*in.model, ops, o.bound);
        in.algebra = in.closure->algebra;
        break;
      }
      case nhp::io::file_kind::unknown:
        throw nhp::input_error("input is neither a model nor an algebra");
    }
    return in;
  }

  nhp::check_options check_opts(options const& o) {
    nhp::check_options c;
    c.mode    = o.exhaustive ? nhp::check_mode::exhaustive : nhp::check_mode::automatic;
    c.samples = o.samples;
    c.seed    = o.seed;
    c.workers = o.workers;
    return c;
  }

  class output {
   public:
    explicit output(options const& o) : _json(o.as_json) {
      if (!o.out_file.empty()) {
        _file.open(o.out_file);
        if (!_file) {
          throw nhp::input_error("cannot write " + o.out_file);
        }
      }
    }
    std::ostream& text() {
      return _file.is_open() ? _file : std::cout;
    }
    bool json_mode() const {
      return _json;
    }
    void emit(json const& j) {
      nhp::io::write_json(text(), j);
    }

   private:
    bool          _json;
    std::ofstream _file;
  };

  void print_report(std::ostream&              os,
                    nhp::check_report const&   rep,
                    nhp::table_context const&  ctx) {
    os << "suite " << rep.suite << ": " << (rep.passed() ? "pass" : "FAIL")
       << '\n';
    for (auto const& r : rep.results) {
      os << "  " << r.law << ' ' << (r.passed ? "pass" : "FAIL") << ' '
         << nhp::io::mode_name(r.mode);
      if (r.mode == nhp::check_mode::sampled) {
        os << " seed=" << r.seed;
      }
      os << " count=" << r.count;
      if (!r.passed) {
        os << " witness";
        for (auto const& [v, i] : r.witness) {
          os << ' ' << v << '=' << ctx.name(i);
        }
      }
      os << '\n';
    }
  }

  json report_json(nhp::check_report const& rep, nhp::table_context const& ctx) {
    json j = nhp::io::to_json(rep);
    for (std::size_t k = 0; k < rep.results.size(); ++k) {
      if (!rep.results[k].passed) {
        json names = json::object();
        for (auto const& [v, i] : rep.results[k].witness) {
          names[v] = ctx.name(i);
        }
        j["results"][k]["witness_names"] = names;
      }
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int run_check(options const& o) {
    if (o.suite.empty()) {
      throw nhp::input_error("check needs --suite");
    }
    auto const& s  = nhp::find_suite(o.suite);
    input       in = load(o, suite_ops(s));
    output      out(o);
    auto const  val = nhp::validate(in.algebra);
    nhp::table_context const ctx(in.algebra);
    auto const               rep = nhp::check(ctx, s, check_opts(o));
    bool const               ok  = val.ok() && rep.passed();
    if (out.json_mode()) {
      json j        = report_json(rep, ctx);
      j["elements"] = in.algebra.size;
      json v        = json::array();
      for (auto const& x : val.violations) {
        v.push_back(x.invariant);
      }
      j["validation"] = v;
      out.emit(j);
    } else {
      out.text() << "elements " << in.algebra.size << '\n';
      for (auto const& x : val.violations) {
        out.text() << "invalid: " << x.invariant << '\n';
      }
      print_report(out.text(), rep, ctx);
    }
    return ok ? 0 : 1;
  }

  int run_represent(options const& o) {
    input      in  = load(o, {nhp::op::dom});
    auto const rep = nhp::build_representation(in.algebra);
    auto const ver = nhp::verify_representation(in.algebra, rep);
    output     out(o);
    if (out.json_mode()) {
      json j              = nhp::io::to_json(rep);
      j["verification"]   = nhp::io::to_json(ver, in.algebra);
      out.emit(j);
    } else {
      out.text() << "elements " << in.algebra.size << ", components "
                 << rep.components.size() << ", points " << rep.points << '\n';
      for (auto const& c : rep.components) {
        out.text() << "  filter " << in.algebra.name(c.F.generator) << " from ("
                   << in.algebra.name(c.pair.first) << ", "
                   << in.algebra.name(c.pair.second) << "), "
                   << c.dp.classes.size() << " classes\n";
      }
      out.text() << "verification: " << (ver.ok() ? "pass" : "FAIL") << '\n';
      for (auto const& [k, n] : ver.counts) {
        out.text() << "  " << k << ": " << n << " failures\n";
      }
      for (auto const& f : ver.failures) {
        out.text() << "  " << f.check << " at";
        for (auto e : f.at) {
          out.text() << ' ' << in.algebra.name(e);
        }
        out.text() << '\n';
      }
    }
    return ver.ok() ? 0 : 1;
  }

  int run_quotient(options const& o) {
    if (o.suite.empty()) {
      throw nhp::input_error("quotient needs --suite");
    }
    if (o.partition.empty()) {
      throw nhp::input_error("quotient needs --partition FILE|builtin");
    }
    auto const& s   = nhp::find_suite(o.suite);
    auto        ops = suite_ops(s);
    ops.insert(nhp::op::dom);
    input          in = load(o, ops);
    nhp::partition p;
    if (o.partition == "builtin") {
      if (!in.model || in.model->partition.empty()) {
        throw nhp::input_error("input carries no built-in partition");
      }
      p = nhp::resolve_partition(*in.closure, in.model->partition);
    } else {
      p = nhp::io::partition_from_json(read_file(o.partition, "partition"),
                                       in.algebra);
    }
    auto const cong = nhp::check_congruence(in.algebra, p);
    output     out(o);
    if (!cong.quotient_ok()) {
      if (out.json_mode()) {
        out.emit({{"congruence", nhp::io::to_json(cong, in.algebra)}});
      } else {
        out.text() << "not a congruence";
        if (!cong.congruence) {
          out.text() << ": " << cong.op << " at";
          for (auto e : cong.tuple) {
            out.text() << ' ' << in.algebra.name(e);
          }
        }
        if (cong.mixes_sorts) {
          out.text() << " (a block mixes tests and non-tests)";
        }
        out.text() << '\n';
      }
      return 1;
    }
    auto const               Q = nhp::quotient(in.algebra, p);
    nhp::table_context const ctx(Q);
    auto const               rep = nhp::check(ctx, s, check_opts(o));
    if (out.json_mode()) {
      json j          = {{"congruence", nhp::io::to_json(cong, in.algebra)}};
      j["quotient"]   = nhp::io::to_json(Q);
      j["report"]     = report_json(rep, ctx);
      out.emit(j);
    } else {
      out.text() << "congruence: yes, quotient has " << Q.size
                 << " elements\n";
      print_report(out.text(), rep, ctx);
    }
    return rep.passed() ? 0 : 1;
  }

  int run_model(options const& o) {
    auto ops = o.ops.empty() ? nhp::op_set{nhp::op::dom, nhp::op::star,
                                           nhp::op::neq, nhp::op::eite,
                                           nhp::op::wc,  nhp::op::whl}
                             : parse_ops(o.ops);
    auto const mc = nhp::from_model(nhp::full_concrete_model(o.full_n), ops,
                                    o.bound);
    output out(o);
    out.emit(nhp::io::to_json(mc.algebra));
    return 0;
  }

  std::size_t element(nhp::finite_algebra const& A, std::string const& name) {
    for (nhp::elem a = 0; a < A.size; ++a) {
      if (A.name(a) == name) {
        return a;
      }
    }
    try {
      std::size_t used = 0;
      auto        i    = std::stoul(name, &used);
      if (used == name.size() && i < A.size) {
        return i;
      }
    } catch (std::exception const&) {
    }
    throw nhp::input_error("unknown element \"" + name + "\"");
  }

  // Tabulable operations a model is closed under before evaluating: those
  // the term or law mentions, with derived ones replaced by their sources.
  nhp::op_set eval_ops(options const& o) {
    nhp::op_set used;
    if (!o.law_name.empty()) {
      auto const& l = nhp::find_law(o.law_name);
      for (auto const* part : {&l.premises, &l.conclusions}) {
        for (auto const& e : *part) {
          nhp::collect_ops(e.lhs, used);
          nhp::collect_ops(e.rhs, used);
        }
      }
    } else if (!o.term_text.empty()) {
      nhp::collect_ops(nhp::detail::parser(o.term_text, {}).parse_all(), used);
    }
    nhp::op_set ops{nhp::op::dom};
    ops |= used;
    if (used.contains(nhp::op::bowtie)) {
      ops.insert(nhp::op::star);
    }
    if (used.contains(nhp::op::cup)) {
      ops.insert(nhp::op::eite);
    }
    for (auto d : {nhp::op::antidom, nhp::op::bowtie, nhp::op::cup}) {
      ops.erase(d);
    }
    return ops;
  }

  int run_eval(options const& o) {
    input                         in = load(o, eval_ops(o));
    nhp::table_context const      ctx(in.algebra);
    std::map<std::string, std::size_t, std::less<>> sigma;
    for (auto const& b : o.binds) {
      auto eq = b.find('=');
      if (eq == std::string::npos) {
        throw nhp::input_error("binding \"" + b + "\" is not var=element");
      }
      sigma[b.substr(0, eq)] = element(in.algebra, b.substr(eq + 1));
    }
    output out(o);
    auto   show = [&](nhp::elem v) { return ctx.name(v); };

    if (!o.law_name.empty()) {
      auto const& l = nhp::find_law(o.law_name);
      for (auto const& [v, srt] : l.vars) {
        if (!sigma.count(v)) {
          throw nhp::input_error("law variable " + v + " is unbound");
        }
      }
      auto side = [&](nhp::equation const& e) {
        auto lhs = nhp::eval(e.lhs, sigma, ctx);
        auto rhs = nhp::eval(e.rhs, sigma, ctx);
        return std::pair{lhs, rhs};
      };
      bool premises = true, conclusions = true;
      json j        = {{"law", l.name}, {"premises", json::array()},
                       {"conclusions", json::array()}};
      for (auto const* part : {&l.premises, &l.conclusions}) {
        bool const is_pre = part == &l.premises;
        for (auto const& e : *part) {
          auto [a, b] = side(e);
          (is_pre ? premises : conclusions) &= a == b;
          j[is_pre ? "premises" : "conclusions"].push_back(json{
              {"lhs", nhp::print(e.lhs)}, {"lhs_value", show(a)},
               {"rhs", nhp::print(e.rhs)}, {"rhs_value", show(b)},
               {"equal", a == b}});
          if (!out.json_mode()) {
            out.text() << (is_pre ? "premise    " : "conclusion ")
                       << nhp::print(e.lhs) << " = " << show(a) << ", "
                       << nhp::print(e.rhs) << " = " << show(b)
                       << (a == b ? "  (equal)" : "  (differ)") << '\n';
          }
        }
      }
      bool const holds = !premises || conclusions;
      j["holds"]       = holds;
      if (out.json_mode()) {
        out.emit(j);
      } else {
        out.text() << l.name << (holds ? " holds" : " fails") << '\n';
      }
      return holds ? 0 : 1;
    }

    if (o.term_text.empty()) {
      throw nhp::input_error("eval needs a term or --law");
    }
    nhp::sort_env env;
    for (nhp::elem a : in.algebra.tests) {
      env[in.algebra.name(a)] = nhp::sort::test;
    }
    for (auto const& [v, i] : sigma) {
      if (ctx.is_test(static_cast<nhp::elem>(i))) {
        env[v] = nhp::sort::test;
      }
    }
    auto const t    = nhp::parse(o.term_text, env);
    std::vector<std::pair<std::string, nhp::sort>> vars;
    nhp::collect_vars(t, vars);
    for (auto const& [v, srt] : vars) {
      if (!sigma.count(v)) {
        sigma[v] = element(in.algebra, v);  // free names denote elements
      }
    }
    auto const v = nhp::eval(t, sigma, ctx);
    if (out.json_mode()) {
      json j = {{"term", nhp::print(t)}, {"value", v}, {"name", show(v)}};
      if (in.closure) {
        j["map"] = nhp::io::detail::map_entries(in.closure->elements[v]);
      }
      out.emit(j);
    } else {
      out.text() << nhp::print(t) << " = " << show(v) << '\n';
    }
    return 0;
  }

  int run_cstar(options const& o) {
    input  in = load(o, {nhp::op::eite, nhp::op::wc});
    output out(o);
    if (in.closure) {
      auto const ctx = nhp::map_context::from_closure(*in.closure);
      auto       B   = nhp::generate_bstar(ctx, o.bound);
      auto const L   = nhp::check_bstar_laws(B);
      auto const R   = nhp::three_valued_check(ctx, B);
      bool const ok  = L.ok() && R.ok();
      if (out.json_mode()) {
        json j;
        j["predicates"]   = nhp::io::to_json(B, &R.traces);
        j["involution"]   = L.involution;
        j["conj_assoc"]   = L.conj_assoc;
        j["disj_assoc"]   = L.disj_assoc;
        j["embeds"]       = L.embeds;
        j["trace_errors"] = R.table_mismatches + R.conj_mismatches
                            + R.disj_mismatches + R.neg_mismatches;
        j["status"]       = ok ? "pass" : "fail";
        out.emit(j);
      } else {
        out.text() << B.preds.size() << " predicates\n";
        for (std::size_t i = 0; i < B.preds.size(); ++i) {
          out.text() << "  " << R.traces[i] << "  " << B.preds[i].expr << '\n';
        }
        out.text() << "involution " << L.involution << ", and-assoc "
                   << L.conj_assoc << ", or-assoc " << L.disj_assoc
                   << ", embeds " << L.embeds << '\n'
                   << "trace mismatches: table " << R.table_mismatches
                   << ", and " << R.conj_mismatches << ", or "
                   << R.disj_mismatches << ", not " << R.neg_mismatches << '\n';
      }
      return ok ? 0 : 1;
    }
    nhp::table_context const ctx(in.algebra);
    auto const               B = nhp::generate_bstar(ctx, o.bound);
    auto const               L = nhp::check_bstar_laws(B);
    if (out.json_mode()) {
      json j          = {{"predicates", nhp::io::to_json(B)}};
      j["involution"] = L.involution;
      j["conj_assoc"] = L.conj_assoc;
      j["disj_assoc"] = L.disj_assoc;
      j["embeds"]     = L.embeds;
      j["status"]     = L.ok() ? "pass" : "fail";
      out.emit(j);
    } else {
      out.text() << B.preds.size() << " predicates\n";
      for (auto const& P : B.preds) {
        out.text() << "  " << P.expr << '\n';
      }
      out.text() << "involution " << L.involution << ", and-assoc "
                 << L.conj_assoc << ", or-assoc " << L.disj_assoc
                 << ", embeds " << L.embeds << '\n';
    }
    return L.ok() ? 0 : 1;
  }

  int run_while(options const& o) {
    input in = load(o, {nhp::op::dom, nhp::op::eite, nhp::op::whl});
    nhp::table_context const ctx(in.algebra);
    output                   out(o);
    auto const&              A = in.algebra;
    std::vector<nhp::elem>   ts, as, ss;
    auto pick = [&](std::string const& name, std::vector<nhp::elem>& into,
                    bool test) {
      if (!name.empty()) {
        into.push_back(static_cast<nhp::elem>(element(A, name)));
        return;
      }
      if (test) {
        into = A.tests;
      } else {
        for (nhp::elem a = 0; a < A.size; ++a) {
          into.push_back(a);
        }
      }
    };
    pick(o.t, ts, false);
    pick(o.alpha, as, true);
    pick(o.s, ss, false);
    bool const single = ts.size() == 1 && as.size() == 1 && ss.size() == 1;
    std::size_t bad   = 0, triples = 0;
    json        runs  = json::array();
    for (auto t : ts) {
      for (auto a : as) {
        if (!ctx.is_test(a)) {
          throw nhp::input_error(A.name(a) + " is not a test");
        }
        for (auto s : ss) {
          auto const r = nhp::while_unroll(ctx, t, a, s);
          ++triples;
          bad += !(r.matches && r.powers_ok);
          if (single) {
            json v = json::array();
            for (auto x : r.v) {
              v.push_back(A.name(x));
            }
            runs.push_back({{"t", A.name(t)},
                            {"alpha", A.name(a)},
                            {"s", A.name(s)},
                            {"n", r.n},
                            {"v", v},
                            {"while", A.name(r.expected)},
                            {"matches", r.matches},
                            {"powers_ok", r.powers_ok}});
            if (!out.json_mode()) {
              out.text() << "n = " << r.n << '\n';
              for (std::size_t k = 0; k < r.v.size(); ++k) {
                out.text() << "v_" << k << " = " << A.name(r.v[k]) << '\n';
              }
              out.text() << "while = " << A.name(r.expected)
                         << (r.matches ? "  (matches v_n)" : "  (differs from v_n)")
                         << '\n';
            }
          }
        }
      }
    }
    if (out.json_mode()) {
      out.emit({{"triples", triples}, {"failures", bad}, {"runs", runs}});
    } else if (!single) {
      out.text() << triples << " triples, " << bad << " failures\n";
    }
    return bad == 0 ? 0 : 1;
  }

  int run_example(options const& o) {
    nhp::concrete_model m;
    if (o.example == "quasiv") {
      m = nhp::fixtures::quasiv();
    } else if (o.example == "disagreeable") {
      m = nhp::fixtures::disagreeable();
    } else {
      throw nhp::input_error("unknown example \"" + o.example + "\"");
    }
    output out(o);
    out.emit(nhp::io::to_json(m));
    return 0;
  }

  void add_input(CLI::App* sub, options& o) {
    sub->add_option("--algebra", o.algebra_file, "table algebra file (- for stdin)");
    sub->add_option("--model", o.model_file, "concrete model file (- for stdin)");
    sub->add_option("--ops", o.ops,
                    "operations to close a model under, e.g. D,star,neq");
    sub->add_option("--bound", o.bound, "closure bound");
  }

  void add_output(CLI::App* sub, options& o) {
    sub->add_option("--out", o.out_file, "write the report to FILE");
    sub->add_flag("--json", o.as_json, "emit JSON");
  }

  void add_checking(CLI::App* sub, options& o) {
    sub->add_option("--suite", o.suite, "law suite");
    sub->add_flag("--exhaustive", o.exhaustive, "enumerate every assignment");
    sub->add_option("--samples", o.samples, "sample count in sampled mode");
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--workers", o.workers, "worker threads (0: all cores)");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite models of partial maps with tests"};
  app.require_subcommand(1);
  options o;

  auto* check = app.add_subcommand("check", "run a law suite");
  add_input(check, o);
  add_checking(check, o);
  add_output(check, o);

  auto* represent = app.add_subcommand("represent",
                                       "build and verify the functional representation");
  add_input(represent, o);
  add_output(represent, o);

  auto* quot = app.add_subcommand("quotient", "quotient by a partition and rerun a suite");
  add_input(quot, o);
  add_checking(quot, o);
  add_output(quot, o);
  quot->add_option("--partition", o.partition, "partition file or \"builtin\"");

  auto* model = app.add_subcommand("model", "emit the table algebra of all maps on n points");
  model->add_option("--full", o.full_n, "number of points")->required();
  model->add_option("--ops", o.ops, "operations to tabulate");
  add_output(model, o);

  auto* eval = app.add_subcommand("eval", "evaluate a term or replay a law");
  add_input(eval, o);
  add_output(eval, o);
  eval->add_option("term", o.term_text, "term to evaluate");
  eval->add_option("--law", o.law_name, "evaluate both sides of a law");
  eval->add_option("--bind", o.binds, "var=element");

  auto* cstar = app.add_subcommand("cstar", "generate and check generalised predicates");
  add_input(cstar, o);
  add_output(cstar, o);

  auto* wh = app.add_subcommand("while-unroll", "unroll while-do into nested if-then-else");
  add_input(wh, o);
  add_output(wh, o);
  wh->add_option("--t", o.t, "tested element");
  wh->add_option("--alpha", o.alpha, "test");
  wh->add_option("--s", o.s, "body");

  auto* ex = app.add_subcommand("paper-example", "emit a built-in example model");
  ex->add_option("name", o.example, "quasiv or disagreeable")->required();
  add_output(ex, o);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return run_check(o);
    if (*represent) return run_represent(o);
    if (*quot) return run_quotient(o);
    if (*model) return run_model(o);
    if (*eval) return run_eval(o);
    if (*cstar) return run_cstar(o);
    if (*wh) return run_while(o);
    if (*ex) return run_example(o);
  } catch (nhp::input_error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (nhp::capability_error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (nhp::invariant_error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
