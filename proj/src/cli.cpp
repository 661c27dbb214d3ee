#include "msp/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "msp/analytics.hpp"
#include "msp/harness.hpp"
#include "msp/instances.hpp"
#include "msp/json_io.hpp"
#include "msp/labeling.hpp"

namespace msp::cli {

namespace {

using nlohmann::json;

void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << payload;
    if (payload.empty() || payload.back() != '\n') out << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << payload;
    if (payload.empty() || payload.back() != '\n') f << "\n";
  }
}

struct SimulateArgs {
  std::string instance, algorithm = "greedy", format = "json", out_path, augment = "auto";
  double p = 0.5, epsilon = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  double assert_min = -1.0;
};

int do_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  auto algo = algorithm_from_name(a.algorithm);
  if (!algo) {
    err << "unknown algorithm: " << a.algorithm << "\n";
    return 2;
  }
  MatroidInstance m = load_instance(a.instance);
  RunConfig cfg;
  cfg.p = a.p;
  cfg.epsilon = a.epsilon;
  AugmentPolicy policy = a.augment == "on"    ? AugmentPolicy::on
                         : a.augment == "off" ? AugmentPolicy::off
                                              : AugmentPolicy::automatic;
  CompetitivenessReport rep = estimate(m, *algo, cfg, policy, a.trials, a.seed, a.threads);
  if (a.format == "csv")
    emit(report_to_csv(rep), a.out_path, out);
  else
    emit(report_to_json(rep).dump(2), a.out_path, out);
  if (a.assert_min >= 0.0 && rep.min_element.freq < a.assert_min) {
    err << "bound check failed: min frequency " << rep.min_element.freq << " < "
        << a.assert_min << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matroid secretary simulation laboratory"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo competitiveness estimation");
  simulate->add_option("--instance", sim.instance, "instance JSON file")->required();
  simulate->add_option("--algorithm", sim.algorithm,
                       "greedy|oblivious-partition|mixture-rank2|basic|generation|"
                       "oblivious-graphic|mixture-graphic");
  simulate->add_option("--p", sim.p, "sample fraction in (0,1)");
  simulate->add_option("--epsilon", sim.epsilon, "mixture probability");
  simulate->add_option("--trials", sim.trials, "trial count")->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate->add_option("--threads", sim.threads, "worker cap (default: hardware)");
  simulate->add_option("--augment", sim.augment, "auto|on|off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  simulate->add_option("--format", sim.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--out", sim.out_path, "output file");
  simulate->add_option("--assert-min", sim.assert_min,
                       "exit 1 when the minimum frequency falls below this bound");

  // analytic
  std::string formula;
  double an_p = 0.5, an_eps = 0.0;
  int an_r = 1, an_q = 1;
  std::string an_out;
  auto* analytic = app.add_subcommand("analytic", "closed-form competitiveness values");
  analytic->add_option("--formula", formula,
                       "c|a|basic|generation|rank2-mixture|graphic-mixture|forbidden")
      ->required();
  analytic->add_option("--r", an_r, "rank");
  analytic->add_option("--p", an_p, "sample fraction");
  analytic->add_option("--epsilon", an_eps, "mixture probability");
  analytic->add_option("--q", an_q, "forbidden set size");
  analytic->add_option("--out", an_out, "output file");

  // optimize
  std::string target;
  int opt_r = 1, opt_q = 1;
  std::string opt_out;
  auto* optimize = app.add_subcommand("optimize", "parameter optimization");
  optimize->add_option("--target", target,
                       "uniform|laminar|rank2-mixture|graphic-mixture|"
                       "graphic-mixture-high-eps|forbidden")
      ->required();
  optimize->add_option("--r", opt_r, "rank for uniform/laminar targets");
  optimize->add_option("--q", opt_q, "forbidden set size");
  optimize->add_option("--out", opt_out, "output file");

  // tight
  int t_q = 1, t_r = 1;
  std::uint64_t t_seed = 0;
  std::string t_out;
  auto* tight = app.add_subcommand("tight", "generate the tight laminar instance");
  tight->add_option("--q", t_q, "block size")->required()->check(CLI::PositiveNumber);
  tight->add_option("--r", t_r, "rank")->required()->check(CLI::PositiveNumber);
  tight->add_option("--seed", t_seed, "RNG seed")->required();
  tight->add_option("--out", t_out, "output file")->required();

  // gen
  std::string g_family, g_out, g_classes;
  int g_n = 10, g_r = 2, g_depth = 2, g_branch = 2, g_vertices = 5, g_edges = 8;
  bool g_simple = false;
  double g_bias = 0.0;
  std::uint64_t g_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--family", g_family, "uniform|laminar|rank2|graph")->required();
  gen->add_option("--n", g_n, "element count");
  gen->add_option("--r", g_r, "rank (uniform)");
  gen->add_option("--depth", g_depth, "laminar depth");
  gen->add_option("--branching", g_branch, "laminar branching");
  gen->add_option("--classes", g_classes, "rank2 class sizes, comma separated");
  gen->add_option("--vertices", g_vertices, "graph vertices");
  gen->add_option("--edges", g_edges, "graph edges");
  gen->add_flag("--simple", g_simple, "no parallel edges");
  gen->add_option("--parallel-bias", g_bias, "fraction of extra edges duplicating the tree");
  gen->add_option("--seed", g_seed, "RNG seed")->required();
  gen->add_option("--out", g_out, "output file")->required();

  // verify
  std::string v_pairing, v_instance, v_out;
  double v_p = 0.5;
  long v_trials = 10000;
  int v_estar = -1;
  std::uint64_t v_seed = 0;
  auto* verify = app.add_subcommand("verify", "language implication checks");
  verify->add_option("--pairing", v_pairing, "uniform|laminar|basic|generation")->required();
  verify->add_option("--instance", v_instance, "instance JSON file")->required();
  verify->add_option("--p", v_p, "sample fraction");
  verify->add_option("--trials", v_trials, "paired trials")->check(CLI::PositiveNumber);
  verify->add_option("--estar", v_estar, "optimal element (default: best)");
  verify->add_option("--seed", v_seed, "RNG seed")->required();
  verify->add_option("--out", v_out, "output file");

  // oracle
  std::string o_instance, o_algorithm = "greedy", o_out;
  double o_p = 0.5, o_eps = 0.0;
  auto* oracle = app.add_subcommand("oracle", "exact small-instance enumeration");
  oracle->add_option("--instance", o_instance, "instance JSON file")->required();
  oracle->add_option("--algorithm", o_algorithm, "algorithm identifier");
  oracle->add_option("--p", o_p, "sample fraction");
  oracle->add_option("--epsilon", o_eps, "mixture probability");
  oracle->add_option("--out", o_out, "output file");

  // test-dist
  std::string d_instance, d_out, d_dump;
  double d_p = 0.5;
  long d_trials = 100000;
  std::uint64_t d_seed = 0;
  auto* tdist = app.add_subcommand("test-dist", "Poisson structure tests");
  tdist->add_option("--instance", d_instance, "instance JSON file")->required();
  tdist->add_option("--p", d_p, "sample fraction");
  tdist->add_option("--trials", d_trials, "trial count")->check(CLI::PositiveNumber);
  tdist->add_option("--seed", d_seed, "RNG seed")->required();
  tdist->add_option("--out", d_out, "output file");
  tdist->add_option("--dump-trace", d_dump, "write one augmented trial trace as JSON lines");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate->parsed()) return do_simulate(sim, out, err);

    if (analytic->parsed()) {
      double value;
      json params;
      if (formula == "c" || formula == "c-uniform") {
        value = c_uniform(an_r, an_p);
        params = {{"r", an_r}, {"p", json_number(an_p)}};
      } else if (formula == "a" || formula == "a-laminar") {
        value = a_laminar(an_r, an_p);
        params = {{"r", an_r}, {"p", json_number(an_p)}};
      } else if (formula == "basic") {
        value = basic_bound(an_p);
        params = {{"p", json_number(an_p)}};
      } else if (formula == "generation") {
        value = generation_bound(an_p);
        params = {{"p", json_number(an_p)}};
      } else if (formula == "rank2-mixture") {
        value = rank2_mixture_bound(an_p, an_eps);
        params = {{"p", json_number(an_p)}, {"epsilon", json_number(an_eps)}};
      } else if (formula == "graphic-mixture") {
        value = graphic_mixture_bound(an_p, an_eps);
        params = {{"p", json_number(an_p)}, {"epsilon", json_number(an_eps)}};
      } else if (formula == "forbidden") {
        value = forbidden_bound(an_q, an_p);
        params = {{"q", an_q}, {"p", json_number(an_p)}};
      } else {
        err << "unknown formula: " << formula << "\n";
        return 2;
      }
      json j = {{"formula", formula}, {"params", params}, {"value", json_number(value)}};
      emit(j.dump(2), an_out, out);
      return 0;
    }

    if (optimize->parsed()) {
      json j;
      if (target == "uniform" || target == "laminar") {
        bool uni = target == "uniform";
        ScalarOpt s = optimize_scalar(
            [&](double p) { return uni ? c_uniform(opt_r, p) : a_laminar(opt_r, p); }, 1e-4,
            1.0 - 1e-4, 1e-9);
        j = {{"target", target}, {"r", opt_r}, {"p", json_number(s.arg)},
             {"value", json_number(s.value)}};
      } else if (target == "forbidden") {
        ScalarOpt s = forbidden_optimum(opt_q);
        j = {{"target", target}, {"q", opt_q}, {"p", json_number(s.arg)},
             {"value", json_number(s.value)}};
      } else if (target == "rank2-mixture" || target == "graphic-mixture" ||
                 target == "graphic-mixture-high-eps") {
        MixtureOpt m = target == "rank2-mixture" ? optimize_mixture_rank2()
                       : target == "graphic-mixture" ? optimize_mixture_graphic()
                                                     : optimize_mixture_graphic_high_eps();
        j = {{"target", target}, {"p", json_number(m.p)}, {"q", json_number(m.q)},
             {"eps", json_number(m.eps)}, {"value", json_number(m.value)}};
      } else {
        err << "unknown target: " << target << "\n";
        return 2;
      }
      emit(j.dump(2), opt_out, out);
      return 0;
    }

    if (tight->parsed()) {
      SplitMix64 rng = child_rng(t_seed, 0);
      save_instance(tight_laminar(t_q, t_r, rng), t_out);
      out << "{\"written\": \"" << t_out << "\"}\n";
      return 0;
    }

    if (gen->parsed()) {
      SplitMix64 rng = child_rng(g_seed, 0);
      MatroidInstance m;
      if (g_family == "uniform") {
        m = uniform_instance(g_n, g_r);
      } else if (g_family == "laminar") {
        m = random_laminar(g_n, g_depth, g_branch, rng);
      } else if (g_family == "rank2") {
        std::vector<int> sizes;
        std::stringstream ss(g_classes);
        std::string tok;
        while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
        m = random_rank2(sizes, rng);
      } else if (g_family == "graph") {
        m = random_graph(g_vertices, g_edges, g_simple, g_bias, rng);
      } else {
        err << "unknown family: " << g_family << "\n";
        return 2;
      }
      save_instance(m, g_out);
      out << "{\"written\": \"" << g_out << "\"}\n";
      return 0;
    }

    if (verify->parsed()) {
      MatroidInstance m = load_instance(v_instance);
      Pairing pairing;
      if (v_pairing == "uniform")
        pairing = Pairing::uniform;
      else if (v_pairing == "laminar")
        pairing = Pairing::laminar;
      else if (v_pairing == "basic")
        pairing = Pairing::basic;
      else if (v_pairing == "generation")
        pairing = Pairing::generation;
      else {
        err << "unknown pairing: " << v_pairing << "\n";
        return 2;
      }
      ElementSet opt = base_optimum(m);
      ElementId estar = v_estar >= 0 ? v_estar : opt.front();
      ImplicationStats st = verify_implication(m, pairing, estar, v_p, v_trials, v_seed);
      json j = {{"pairing", v_pairing},
                {"estar", estar},
                {"trials", st.trials},
                {"word_in_lang", st.word_in_lang},
                {"selected", st.selected},
                {"violations", st.violations},
                {"converse_violations", st.converse_violations}};
      emit(j.dump(2), v_out, out);
      return st.violations + st.converse_violations > 0 ? 1 : 0;
    }

    if (oracle->parsed()) {
      auto algo = algorithm_from_name(o_algorithm);
      if (!algo) {
        err << "unknown algorithm: " << o_algorithm << "\n";
        return 2;
      }
      MatroidInstance m = load_instance(o_instance);
      RunConfig cfg;
      cfg.p = o_p;
      cfg.epsilon = o_eps;
      emit(exact_to_json(exact_oracle(m, *algo, cfg)).dump(2), o_out, out);
      return 0;
    }

    if (tdist->parsed()) {
      MatroidInstance m = load_instance(d_instance);
      if (!d_dump.empty()) {
        SplitMix64 rng = child_rng(d_seed, 0);
        AugmentedInstance aug = augment(m, d_p, rng);
        ImprovingTrace trace = improving_trace(aug, arrivals_for(aug, rng));
        std::ofstream f(d_dump);
        if (!f) throw std::runtime_error("cannot open trace dump file: " + d_dump);
        f << trace_to_jsonl(trace);
      }
      emit(distribution_to_json(distribution_tests(m, d_p, d_trials, d_seed)).dump(2), d_out,
           out);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace msp::cli
