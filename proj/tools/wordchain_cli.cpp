// wordchain: command-line front end for the word-chain library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wordchain/boundary.hpp"
#include "wordchain/bridges.hpp"
#include "wordchain/io.hpp"
#include "wordchain/kernels.hpp"
#include "wordchain/measures.hpp"
#include "wordchain/orders.hpp"
#include "wordchain/parallel.hpp"
#include "wordchain/plackett_luce.hpp"
#include "wordchain/stats.hpp"
#include "wordchain/verify.hpp"
#include "wordchain/words.hpp"

namespace {

using namespace wordchain;
using io::json;

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> depth;
  unsigned jobs = 1;
  std::string format = "text";
  std::string pair_file;
  std::string out_file;
  bool format_given = false;

  std::size_t trials_or(std::size_t fallback) const { return trials.value_or(fallback); }
  std::size_t depth_or(std::size_t fallback) const { return depth.value_or(fallback); }
  FanOut fan_out(std::string label, std::size_t block) const { return {seed, std::move(label), jobs, block}; }
};

BalancedWord balanced_arg(const std::string& s) { return io::parse_balanced(s); }

Word word_arg(const std::string& s) { return s == "∅" ? Word() : Word(s); }

CanonicalPair require_pair(const RunConfig& cfg) {
  if (cfg.pair_file.empty()) throw invalid_argument("--pair FILE is required");
  return io::load_pair(cfg.pair_file);
}

/// exp:<rate>, uniform:<lo>:<hi>, or a measure JSON file (optionally step:<file>).
ParametricMeasure parametric_arg(const std::string& spec) {
  if (spec.rfind("exp:", 0) == 0) return Exponential(parse_rational(spec.substr(4)));
  if (spec.rfind("uniform:", 0) == 0) {
    auto rest = spec.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw invalid_argument("expected uniform:<lo>:<hi>, got " + spec);
    return StepMeasure::uniform(parse_rational(rest.substr(0, colon)), parse_rational(rest.substr(colon + 1)));
  }
  std::string path = spec.rfind("step:", 0) == 0 ? spec.substr(5) : spec;
  auto in = io::open_input(path);
  return io::step_measure_from_json(io::parse_json(in, path));
}

void write_path(std::ostream& out, const BridgePath& path, const std::string& format) {
  if (format == "json") {
    out << io::to_json(path).dump() << '\n';
  } else if (format == "csv") {
    io::write_path_csv(out, path);
  } else {
    for (std::size_t k = 0; k < path.states.size(); ++k) out << k << ' ' << path.states[k].display() << '\n';
  }
}

json estimate_json(const Estimate& e) { return {{"estimate", io::number6(e.value)}, {"stderr", io::number6(e.stderr_)}}; }

Accumulator merge_into(Accumulator& a, const Accumulator& b) {
  a.merge(b);
  return a;
}

// ---- subcommands -----------------------------------------------------------

struct SubwordArgs {
  std::string w, v;
  std::optional<std::size_t> matrix;
  std::size_t cap = kDefaultMatrixMaxLen;
};

void run_subword(const SubwordArgs& a, const RunConfig&, std::ostream& out) {
  if (a.matrix) {
    auto mats = build_count_matrices(*a.matrix, a.cap);
    out << io::to_json(mats.p).dump() << '\n';
    return;
  }
  if (a.w.empty() && a.v.empty()) throw invalid_argument("subword needs W V or --matrix L");
  out << subword_count(word_arg(a.w), word_arg(a.v)).str() << '\n';
}

struct KernelArgs {
  std::string kind, v, w;
};

void run_kernel(const KernelArgs& a, const RunConfig&, std::ostream& out) {
  auto v = balanced_arg(a.v);
  auto w = balanced_arg(a.w);
  Rational r;
  if (a.kind == "one-step")
    r = one_step_prob(v, w);
  else if (a.kind == "multi-step")
    r = multi_step_prob(v, w);
  else if (a.kind == "dm")
    r = dm_kernel(v, w);
  else if (a.kind == "backward")
    r = backward_prob(v, w);
  else
    throw invalid_argument("unknown kernel '" + a.kind + "'");
  out << to_string(r) << '\n';
}

struct SimulateArgs {
  std::size_t steps = 0;
  bool histogram = false;
};

void run_simulate(const SimulateArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (!a.histogram) {
    Rng rng = make_rng(cfg.seed, "simulate");
    write_path(out, simulate_forward(a.steps, rng), cfg.format_given ? cfg.format : "csv");
    return;
  }
  using Hist = std::map<BalancedWord, std::uint64_t>;
  const std::size_t trials = cfg.trials_or(10000);
  auto hist = fan_out<Hist>(
      trials, cfg.fan_out("simulate-histogram", 4096),
      [&](Rng& rng, std::size_t, std::size_t count) {
        Hist h;
        for (std::size_t i = 0; i < count; ++i) ++h[simulate_forward(a.steps, rng).back()];
        return h;
      },
      [](Hist& x, const Hist& y) {
        for (const auto& [k, c] : y) x[k] += c;
      });
  auto words = enumerate_balanced(a.steps);
  std::vector<std::uint64_t> observed;
  std::vector<double> probs(words.size(), 1.0 / static_cast<double>(words.size()));
  json counts = json::object();
  for (const auto& w : words) {
    observed.push_back(hist[w]);
    counts[w.display()] = hist[w];
  }
  auto chi = chi_square_gof(observed, probs);
  json j = {{"steps", a.steps},
            {"trials", trials},
            {"exact_probability", to_string(Rational(1, binomial(static_cast<unsigned>(2 * a.steps),
                                                                   static_cast<unsigned>(a.steps))))},
            {"counts", std::move(counts)},
            {"chi_square", io::number6(chi.statistic)},
            {"dof", chi.dof},
            {"p_value", io::number6(chi.p_value)}};
  out << j.dump(2) << '\n';
}

void run_bridge(const std::string& target, const RunConfig& cfg, std::ostream& out) {
  Rng rng = make_rng(cfg.seed, "bridge");
  write_path(out, sample_finite_bridge(balanced_arg(target), rng), cfg.format_given ? cfg.format : "csv");
}

struct InfiniteArgs {
  std::size_t steps = 0;
  std::string emit = "csv";
};

void run_infinite_bridge(const InfiniteArgs& a, const RunConfig& cfg, std::ostream& out) {
  InfiniteBridge bridge(require_pair(cfg), make_rng(cfg.seed, "infinite-bridge"));
  for (std::size_t k = 0; k < a.steps; ++k) bridge.extend();
  write_path(out, bridge.path(), a.emit);
}

struct PatternArgs {
  std::string w;
  std::string empirical;
  bool mc = false;
};

void run_pattern_prob(const PatternArgs& a, const RunConfig& cfg, std::ostream& out) {
  auto w = balanced_arg(a.w);
  std::optional<AtomicPair> atomic;
  std::optional<CanonicalPair> canonical;
  if (!a.empirical.empty())
    atomic = empirical_pair(balanced_arg(a.empirical));
  else
    canonical = require_pair(cfg);
  Rational exact = atomic ? pattern_prob_exact(*atomic, w) : pattern_prob_exact(*canonical, w);

  json j = {{"word", w.str()}, {"exact", to_string(exact)}};
  std::optional<Estimate> mc;
  if (a.mc) {
    const std::size_t trials = cfg.trials_or(100000);
    auto acc = fan_out<Accumulator>(
        trials, cfg.fan_out("pattern-prob", 4096),
        [&](Rng& rng, std::size_t, std::size_t count) {
          Estimate e = atomic ? pattern_prob_mc(*atomic, w, count, rng) : pattern_prob_mc(*canonical, w, count, rng);
          auto hits = static_cast<std::size_t>(std::llround(e.value * static_cast<double>(count)));
          Accumulator block;
          for (std::size_t i = 0; i < count; ++i) block.add(i < hits ? 1.0 : 0.0);
          return block;
        },
        merge_into);
    mc = acc.estimate();
    j["mc"] = io::to_json(*mc);
  }
  if (cfg.format == "json") {
    out << j.dump() << '\n';
    return;
  }
  out << to_string(exact) << '\n';
  if (mc) out << "mc " << io::format_double(mc->value) << " stderr " << io::format_double(mc->stderr_) << '\n';
}

struct SourceArgs {
  std::string source, zeta, eta;

  OrderSampler sampler(const RunConfig& cfg) const {
    if (!zeta.empty() || !eta.empty()) {
      if (zeta.empty() || eta.empty()) throw invalid_argument("--zeta and --eta go together");
      return OrderSampler::parametric(parametric_arg(zeta), parametric_arg(eta));
    }
    if (!source.empty()) return OrderSampler::bridge(io::load_pair(source));
    return OrderSampler::bridge(require_pair(cfg));
  }
};

struct OrdersArgs {
  SourceArgs src;
  std::string x = "a1";
  std::string y = "b1";
  bool embedding = false;
};

void run_orders(const OrdersArgs& a, const RunConfig& cfg, std::ostream& out) {
  auto sampler = a.src.sampler(cfg);
  const std::size_t depth = cfg.depth_or(100);
  const std::size_t trials = cfg.trials_or(1000);
  auto x = LabeledLetter::parse(a.x);
  auto y = LabeledLetter::parse(a.y);
  require_depth(depth, {x});
  if (!a.embedding) require_depth(depth, {y});
  auto acc = fan_out<Accumulator>(
      trials, cfg.fan_out(a.embedding ? "orders-f" : "orders-d", 64),
      [&](Rng& rng, std::size_t, std::size_t count) {
        Accumulator block;
        for (std::size_t i = 0; i < count; ++i) {
          auto run = sampler.draw(depth, rng);
          block.add(a.embedding ? run.f_hat(x) : run.d_hat(x, y));
        }
        return block;
      },
      merge_into);
  auto e = acc.estimate();
  json j = {{"quantity", a.embedding ? "f(" + x.str() + ")" : "d(" + x.str() + "," + y.str() + ")"},
            {"estimate", io::number6(e.value)},
            {"stderr", io::number6(e.stderr_)},
            {"depth", depth}};
  out << j.dump() << '\n';
}

struct MomentsArgs {
  SourceArgs src;
  std::size_t n = 1;
};

void run_moments(const MomentsArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (a.n > 4) throw cap_exceeded("moments: n > 4");
  auto sampler = a.src.sampler(cfg);
  const std::size_t trials = cfg.trials_or(100000);
  using Pair = std::pair<Accumulator, Accumulator>;
  auto [mu, nu] = fan_out<Pair>(
      trials, cfg.fan_out("moments", 1024),
      [&](Rng& rng, std::size_t, std::size_t count) {
        Pair p;
        for (std::size_t i = 0; i < count; ++i) {
          auto run = sampler.draw(a.n + 1, rng);
          p.first.add(moment_statistic(run, a.n, Letter::A));
          p.second.add(moment_statistic(run, a.n, Letter::B));
        }
        return p;
      },
      [](Pair& x, const Pair& y) {
        x.first.merge(y.first);
        x.second.merge(y.second);
      });
  json j = {{"n", a.n}, {"trials", trials}, {"mu", estimate_json(mu.estimate())}, {"nu", estimate_json(nu.estimate())}};
  out << j.dump() << '\n';
}

struct PlackettArgs {
  std::string alpha = "1", beta = "1";
  std::string action;
  std::vector<std::string> operands;
  bool sorted = false;
  std::size_t count = 1;
};

void run_plackett_luce(const PlackettArgs& a, const RunConfig& cfg, std::ostream& out) {
  RatePair rates(parse_rational(a.alpha), parse_rational(a.beta));
  auto need = [&](std::size_t k) {
    if (a.operands.size() != k)
      throw invalid_argument("plackett-luce " + a.action + " takes " + std::to_string(k) + " operand(s)");
  };
  if (a.action == "prob") {
    need(1);
    out << to_string(pl_word_prob(rates, balanced_arg(a.operands[0]))) << '\n';
  } else if (a.action == "harmonic") {
    need(1);
    out << to_string(pl_harmonic(rates, balanced_arg(a.operands[0]))) << '\n';
  } else if (a.action == "transition") {
    need(2);
    out << to_string(pl_transition(rates, balanced_arg(a.operands[0]), balanced_arg(a.operands[1]))) << '\n';
  } else if (a.action == "sample") {
    need(1);
    std::size_t n = std::stoul(a.operands[0]);
    Rng rng = make_rng(cfg.seed, a.sorted ? "plackett-luce-sorted" : "plackett-luce");
    for (std::size_t i = 0; i < a.count; ++i)
      out << (a.sorted ? pl_sample_sorted(rates, n, rng) : pl_sample(rates, n, rng)).display() << '\n';
  } else {
    throw invalid_argument("unknown plackett-luce action '" + a.action + "'");
  }
}

struct BoundaryArgs {
  std::string seq;
  std::size_t m_max = 2;
  double tolerance = 0.15;
};

void run_boundary(const BoundaryArgs& a, const RunConfig& cfg, std::ostream& out) {
  auto seq = io::load_word_sequence(a.seq);
  ConvergenceConfig cc;
  cc.distance_tolerance = a.tolerance;
  auto report = convergence_report(seq, require_pair(cfg), a.m_max, cc);
  if (cfg.format == "text") {
    out << report.verdict() << '\n';
    const auto& last = report.steps.back();
    out << "final distances mu " << io::format_double(last.mu_distance) << " nu "
        << io::format_double(last.nu_distance) << '\n';
    for (const auto& t : report.patterns)
      out << t.w.display() << " target " << to_string(t.target) << " final error "
          << io::format_double(t.errors.back()) << '\n';
    return;
  }
  out << io::to_json(report).dump(2) << '\n';
}

int run_verify(bool timing, std::ostream& out) {
  auto summary = verify_all([&](const IdentityResult& r) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checked << " checks";
    if (r.failures) out << ", " << r.failures << " failures (first: " << r.first_failure << ")";
    if (timing) out << " [" << io::format_double(r.seconds) << " s]";
    out << '\n';
    out.flush();
  });
  out << summary.results.size() << " identities, " << summary.total_checked() << " checks: "
      << (summary.passed() ? "all passed" : "FAILED") << '\n';
  return summary.passed() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wordchain: exact and Monte Carlo tools for the balanced-word chain"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "master seed (64-bit unsigned)");
  app.add_option("--trials", cfg.trials, "Monte Carlo trials");
  app.add_option("--depth", cfg.depth, "order depth");
  app.add_option("--jobs", cfg.jobs, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  auto* format_opt = app.add_option("--format", cfg.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--pair", cfg.pair_file, "canonical pair JSON file");
  app.add_option("--out", cfg.out_file, "write output to FILE");

  SubwordArgs subword;
  auto* sub_subword = app.add_subcommand("subword", "binom(W, V): occurrences of V as a subword of W");
  sub_subword->add_option("W", subword.w);
  sub_subword->add_option("V", subword.v);
  sub_subword->add_option("--matrix", subword.matrix, "export the count matrix over words of length <= L");
  sub_subword->add_option("--cap", subword.cap, "maximum L for --matrix");

  KernelArgs kernel;
  auto* sub_kernel = app.add_subcommand("kernel", "exact kernels: one-step, multi-step, dm, backward");
  sub_kernel->add_option("KIND", kernel.kind)->required()->check(CLI::IsMember({"one-step", "multi-step", "dm", "backward"}));
  sub_kernel->add_option("FROM", kernel.v)->required();
  sub_kernel->add_option("TO", kernel.w)->required();

  SimulateArgs simulate;
  auto* sub_simulate = app.add_subcommand("simulate", "simulate the base chain");
  sub_simulate->add_option("--steps", simulate.steps)->required();
  sub_simulate->add_flag("--histogram", simulate.histogram, "tabulate U_n over --trials runs");

  std::string bridge_target;
  auto* sub_bridge = app.add_subcommand("bridge", "sample a finite bridge to a target word");
  sub_bridge->add_option("--target", bridge_target)->required();

  InfiniteArgs infinite;
  auto* sub_infinite = app.add_subcommand("infinite-bridge", "simulate the infinite bridge of --pair");
  sub_infinite->add_option("--steps", infinite.steps)->required();
  sub_infinite->add_option("--emit", infinite.emit)->check(CLI::IsMember({"csv", "json"}));

  PatternArgs pattern;
  auto* sub_pattern = app.add_subcommand("pattern-prob", "probability of the interleaving pattern W");
  sub_pattern->add_option("W", pattern.w)->required();
  sub_pattern->add_option("--empirical", pattern.empirical, "use the empirical pair of this word instead of --pair");
  sub_pattern->add_flag("--mc", pattern.mc, "add a Monte Carlo estimate over --trials");

  auto add_source = [](CLI::App* sub, SourceArgs& src) {
    sub->add_option("--source", src.source, "canonical pair JSON (infinite-bridge source)");
    sub->add_option("--zeta", src.zeta, "exp:RATE, uniform:LO:HI or measure JSON");
    sub->add_option("--eta", src.eta, "exp:RATE, uniform:LO:HI or measure JSON");
  };

  OrdersArgs orders;
  auto* sub_orders = app.add_subcommand("orders", "estimate d(x, y) or f(x) for an exchangeable order");
  add_source(sub_orders, orders.src);
  sub_orders->add_option("--x", orders.x);
  sub_orders->add_option("--y", orders.y);
  sub_orders->add_flag("--embedding", orders.embedding, "estimate f(x) instead of d(x, y)");

  MomentsArgs moments;
  auto* sub_moments = app.add_subcommand("moments", "estimate the n-th moments of mu and nu");
  add_source(sub_moments, moments.src);
  sub_moments->add_option("--n", moments.n);

  PlackettArgs pl;
  auto* sub_pl = app.add_subcommand("plackett-luce", "competing-exponentials chain");
  sub_pl->add_option("--alpha", pl.alpha);
  sub_pl->add_option("--beta", pl.beta);
  sub_pl->add_option("ACTION", pl.action)->required()->check(CLI::IsMember({"prob", "sample", "harmonic", "transition"}));
  sub_pl->add_option("OPERANDS", pl.operands);
  sub_pl->add_flag("--sorted", pl.sorted, "sample by sorting exponential draws");
  sub_pl->add_option("--count", pl.count, "number of samples");

  BoundaryArgs boundary;
  auto* sub_boundary = app.add_subcommand("boundary", "convergence diagnostics for a word sequence");
  sub_boundary->add_option("--seq", boundary.seq)->required();
  sub_boundary->add_option("--mmax", boundary.m_max);
  sub_boundary->add_option("--tolerance", boundary.tolerance);

  bool timing = false;
  auto* sub_verify = app.add_subcommand("verify", "run the exact-identity suite");
  sub_verify->add_flag("--timing", timing, "show per-identity wall time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  cfg.format_given = format_opt->count() > 0;
  if (sub_boundary->parsed() && !cfg.format_given) cfg.format = "json";

  std::ofstream file;
  if (!cfg.out_file.empty()) {
    file.open(cfg.out_file);
    if (!file) {
      std::cerr << "error: cannot write " << cfg.out_file << '\n';
      return kExitUsage;
    }
  }
  std::ostream& out = cfg.out_file.empty() ? std::cout : file;

  try {
    if (sub_subword->parsed()) run_subword(subword, cfg, out);
    if (sub_kernel->parsed()) run_kernel(kernel, cfg, out);
    if (sub_simulate->parsed()) run_simulate(simulate, cfg, out);
    if (sub_bridge->parsed()) run_bridge(bridge_target, cfg, out);
    if (sub_infinite->parsed()) run_infinite_bridge(infinite, cfg, out);
    if (sub_pattern->parsed()) run_pattern_prob(pattern, cfg, out);
    if (sub_orders->parsed()) run_orders(orders, cfg, out);
    if (sub_moments->parsed()) run_moments(moments, cfg, out);
    if (sub_pl->parsed()) run_plackett_luce(pl, cfg, out);
    if (sub_boundary->parsed()) run_boundary(boundary, cfg, out);
    if (sub_verify->parsed()) return run_verify(timing, out);
  } catch (const cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
