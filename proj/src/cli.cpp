#include "kpl/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "kpl/bounds.hpp"
#include "kpl/cost.hpp"
#include "kpl/loss.hpp"
#include "kpl/montecarlo.hpp"
#include "kpl/profile.hpp"
#include "kpl/report.hpp"
#include "kpl/search.hpp"

namespace kpl::cli {

namespace {

std::vector<RepetitionTier> parse_tiers(const std::string& text) {
  // "20:1,25:2,32:3" -> qubits up to 20 need 1 repetition, 21..25 need 2, ...
  std::vector<RepetitionTier> tiers;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("--tiers: expected qubits:reps, got '" + item + "'");
    }
    try {
      tiers.push_back({static_cast<std::size_t>(std::stoul(item.substr(0, colon))),
                       static_cast<std::size_t>(std::stoul(item.substr(colon + 1)))});
    } catch (const std::logic_error&) {
      throw InvalidArgument("--tiers: expected qubits:reps, got '" + item + "'");
    }
  }
  return tiers;
}

std::vector<double> parse_eta_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument("--eta: '" + item + "' is not a number");
    }
  }
  return out;
}

struct Common {
  std::string out_path;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian cost analysis of generalized Kitaev phase estimation", "kpl"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--out", common.out_path, "Write output to this file instead of stdout");
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")
      ->envname("KPL_THREADS");
  app.add_option("--seed", common.seed, "Random seed for Monte Carlo commands");

  std::function<void(std::ostream&)> action;

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "Print J(n) as CSV rows n,J");
  std::string profile_m;
  std::size_t profile_kitaev_m = 0, profile_doubled_m = 0;
  std::uint64_t profile_product_n = 0;
  auto* opt_pm = profile_cmd->add_option("--m", profile_m, "Multiplicity vector, e.g. 1,2,4");
  auto* opt_pk = profile_cmd->add_option("--kitaev", profile_kitaev_m, "Standard vector with M qubits");
  auto* opt_pd = profile_cmd->add_option("--doubled", profile_doubled_m, "Doubled vector with M qubits");
  auto* opt_pp = profile_cmd->add_option("--product", profile_product_n, "All-ones vector of length N");
  opt_pm->excludes(opt_pk)->excludes(opt_pd)->excludes(opt_pp);
  opt_pk->excludes(opt_pd)->excludes(opt_pp);
  opt_pd->excludes(opt_pp);
  profile_cmd->callback([&] {
    action = [&](std::ostream& os) {
      PhaseProfile p = *opt_pk   ? profile_kitaev(profile_kitaev_m)
                       : *opt_pd ? profile_doubled(profile_doubled_m)
                       : *opt_pp ? profile_product(profile_product_n)
                       : *opt_pm ? compute_profile(MultiplicityVector::parse(profile_m))
                                 : throw InvalidArgument(
                                       "profile: one of --m, --kitaev, --doubled, --product is required");
      os << "n,J\n";
      for (std::size_t n = 0; n < p.counts().size(); ++n) os << n << ',' << p.counts()[n] << '\n';
    };
  });

  // cost
  auto* cost_cmd = app.add_subcommand("cost", "Optimal Bayesian cost of a vector");
  std::string cost_m;
  cost_cmd->add_option("--m", cost_m, "Multiplicity vector")->required();
  cost_cmd->callback([&] {
    action = [&](std::ostream& os) {
      const auto r = make_report(MultiplicityVector::parse(cost_m));
      os << "m,N,M,cost,ratio\n"
         << format_vector_field(r.vector) << ',' << r.n_total << ',' << r.m_count << ','
         << format_number(r.cost) << ',' << format_number(r.optimum_ratio) << '\n';
    };
  });

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form reference curves for N = 1..n_max");
  std::uint64_t bounds_n_max = 20;
  bounds_cmd->add_option("--n-max", bounds_n_max, "Largest N")->required();
  bounds_cmd->callback([&] {
    action = [&](std::ostream& os) {
      os << "n,optimum,kitaev,bound_m2,bound_m3\n";
      for (std::uint64_t n = 1; n <= bounds_n_max; ++n) {
        os << n << ',' << format_number(optimum_cost(n)) << ',';
        if (kitaev_shape(n)) os << format_number(cost_kitaev_closed(n));
        os << ',';
        if (doubled_shape(n)) os << format_number(bound_doubled(n));
        os << ',';
        if (tripled_shape(n)) os << format_number(bound_tripled(n));
        os << '\n';
      }
    };
  });

  // lossy
  auto* lossy_cmd = app.add_subcommand("lossy", "Cost of a vector under photon loss");
  std::string lossy_m, lossy_mode = "exact";
  double lossy_eta = 1.0;
  std::size_t exact_cap = kDefaultExactLossCap;
  lossy_cmd->add_option("--m", lossy_m, "Multiplicity vector")->required();
  lossy_cmd->add_option("--eta", lossy_eta, "Per-gate transmission in (0, 1]")->required();
  lossy_cmd->add_option("--mode", lossy_mode, "exact | resource")
      ->check(CLI::IsMember({"exact", "resource"}));
  lossy_cmd->add_option("--exact-cap", exact_cap, "Qubit cap for the exact mixture")
      ->envname("KPL_EXACT_LOSS_CAP");
  lossy_cmd->callback([&] {
    action = [&](std::ostream& os) {
      const auto v = MultiplicityVector::parse(lossy_m);
      double cost = 0.0, resources = 0.0;
      if (lossy_mode == "exact") {
        cost = lossy_cost_exact(v, lossy_eta, exact_cap);
        resources = static_cast<double>(v.n_total());
      } else {
        const auto r = lossy_cost_resource_adjusted(v, lossy_eta);
        cost = r.cost;
        resources = r.resources;
      }
      os << "m,eta,mode,cost,resources\n"
         << format_vector_field(canonicalize(v)) << ',' << format_number(lossy_eta) << ','
         << lossy_mode << ',' << format_number(cost) << ',' << format_number(resources) << '\n';
    };
  });

  // search
  auto* search_cmd = app.add_subcommand("search", "Best multiplicity vector per resource count");
  SearchConfig search_cfg;
  std::string alphabet = "pow2", strategy = "constrained", tiers;
  std::optional<double> search_eta;
  search_cmd->add_option("--n-min", search_cfg.n_min, "Smallest N (or adjusted resources)");
  search_cmd->add_option("--n-max", search_cfg.n_max, "Largest N (or adjusted resources)")->required();
  search_cmd->add_option("--alphabet", alphabet, "pow2 | any")->check(CLI::IsMember({"pow2", "any"}));
  search_cmd->add_option("--min-reps", search_cfg.min_repetitions,
                         "Minimum repetitions of each distinct multiplicity");
  search_cmd->add_option("--m-max", search_cfg.m_max, "Qubit cap");
  search_cmd->add_option("--tiers", tiers,
                         "Repetition tiers qubits:reps,... (overrides --min-reps)");
  search_cmd->add_option("--strategy", strategy, "constrained | exhaustive")
      ->check(CLI::IsMember({"constrained", "exhaustive"}));
  search_cmd->add_option("--eta", search_eta, "Search with loss-adjusted resources");
  search_cmd->callback([&] {
    action = [&](std::ostream& os) {
      search_cfg.alphabet = alphabet == "any" ? Alphabet::AnyPositive : Alphabet::PowersOfTwo;
      search_cfg.strategy =
          strategy == "exhaustive" ? SearchStrategy::Exhaustive : SearchStrategy::Constrained;
      search_cfg.threads = common.threads;
      if (!tiers.empty()) search_cfg.tiers = parse_tiers(tiers);
      const auto result =
          search_eta ? search_lossy(search_cfg, *search_eta) : search_constrained(search_cfg);
      os << "n,best_m,cost,ratio\n";
      for (const auto& e : result.entries) {
        os << e.key << ',' << format_vector_field(e.report.vector) << ','
           << format_number(e.report.cost) << ',' << format_number(e.report.optimum_ratio) << '\n';
      }
    };
  });

  // verify-shor
  auto* shor_cmd = app.add_subcommand(
      "verify-shor", "Check that the standard Kitaev vector uniquely minimizes cost at fixed M");
  std::size_t shor_m = 3;
  std::optional<Multiplicity> shor_cap;
  bool shor_no_prune = false;
  shor_cmd->add_option("--m-count", shor_m, "Number of qubits M")->required();
  shor_cmd->add_option("--cap", shor_cap, "Largest entry enumerated (default 2^M)");
  shor_cmd->add_flag("--no-prune", shor_no_prune, "Evaluate every vector, no bounding");
  int shor_status = kExitOk;
  shor_cmd->callback([&] {
    action = [&](std::ostream& os) {
      if (shor_m == 0 || shor_m > 12) {
        throw InvalidArgument("verify-shor: --m-count must be in 1..12");
      }
      const Multiplicity cap = shor_cap.value_or(Multiplicity{1} << shor_m);
      const auto r = check_kitaev_qubit_optimality(shor_m, cap, !shor_no_prune);
      os << "result,m_count,cap,minimizer,cost,minimizers,leaves,pruned\n"
         << (r.passed ? "PASS" : "FAIL") << ',' << shor_m << ',' << cap << ','
         << (r.minimizers.empty() ? std::string() : format_vector_field(r.minimizers.front()))
         << ',' << format_number(r.min_cost) << ',' << r.minimizers.size() << ','
         << r.leaves_evaluated << ',' << r.subtrees_pruned << '\n';
      if (!r.passed) shor_status = kExitComputation;
    };
  });

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo mean cost of the optimal measurement");
  std::string sim_m;
  SimConfig sim_cfg;
  sim_cmd->add_option("--m", sim_m, "Multiplicity vector")->required();
  sim_cmd->add_option("--phi", sim_cfg.true_phase, "True phase");
  sim_cmd->add_option("--samples", sim_cfg.samples, "Number of accepted samples");
  sim_cmd->callback([&] {
    action = [&](std::ostream& os) {
      sim_cfg.vector = MultiplicityVector::parse(sim_m);
      sim_cfg.rng_seed = common.seed;
      sim_cfg.threads = common.threads;
      const auto r = simulate_cost(sim_cfg);
      const double analytic = optimal_cost(compute_profile(sim_cfg.vector));
      os << "m,phi,samples,seed,mean,std_error,analytic\n"
         << format_vector_field(sim_cfg.vector) << ',' << format_number(sim_cfg.true_phase) << ','
         << r.samples << ',' << sim_cfg.rng_seed << ',' << format_number(r.mean_cost) << ','
         << format_number(r.std_error) << ',' << format_number(analytic) << '\n';
    };
  });

  // report-fig2 / report-fig3
  std::string fig_format = "csv";
  auto* fig2_cmd = app.add_subcommand("report-fig2", "Noiseless cost landscape (CSV or SVG)");
  std::uint64_t fig2_n_max = 100;
  fig2_cmd->add_option("--n-max", fig2_n_max, "Largest N");
  fig2_cmd->add_option("--format", fig_format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  fig2_cmd->callback([&] {
    action = [&](std::ostream& os) {
      const auto fig = report_fig2(fig2_n_max, common.threads);
      os << (fig_format == "svg" ? render_svg(fig) : to_csv(fig));
    };
  });
  auto* fig3_cmd = app.add_subcommand("report-fig3", "Lossy cost landscape (CSV or SVG)");
  std::string fig3_etas = "0.5,0.9";
  std::uint64_t fig3_n_max = 1000;
  fig3_cmd->add_option("--eta", fig3_etas, "Comma-separated transmissions in (0, 1)");
  fig3_cmd->add_option("--n-max", fig3_n_max, "Largest adjusted resource count");
  fig3_cmd->add_option("--format", fig_format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  fig3_cmd->callback([&] {
    action = [&](std::ostream& os) {
      const auto fig = report_fig3(parse_eta_list(fig3_etas), fig3_n_max, common.threads);
      os << (fig_format == "svg" ? render_svg(fig) : to_csv(fig));
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "kpl: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::ostringstream buffer;
    action(buffer);
    if (common.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(common.out_path, std::ios::binary);
      if (!file || !(file << buffer.str())) {
        throw Error("cannot write " + common.out_path);
      }
    }
    return shor_status;
  } catch (const InvalidArgument& e) {
    err << "kpl: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "kpl: " << e.what() << '\n';
    return kExitComputation;
  }
}

}  // namespace kpl::cli
