// Command-line front end: norms, region decisions, witness generation,
// randomization, membership experiments, and figure grids, all seeded and
// reproducible. Floating output uses 17 significant digits so reruns can be
// compared with diff.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dirichlet/dirichlet.hpp"

namespace {

using namespace dirichlet;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitInconclusive = 4;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text << "\n";
}

DirichletPolynomial load_series(const std::string& path) {
    if (path == "-") return series_from_stream(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file: " + path);
    return series_from_stream(in);
}

struct CommonOpts {
    std::string q_text = "inf";
    double p = 2.0;
    double alpha = 0.0;
    int nodes = 64;
    double tol = 1e-10;
    std::string scheme = "laguerre";
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;

    SpaceParams space() const {
        SpaceParams s{p, parse_exponent_or_inf(q_text), alpha};
        s.validate();
        return s;
    }
    QuadratureSpec quad() const {
        QuadratureSpec spec;
        spec.nodes = nodes;
        spec.rel_tol = tol;
        spec.scheme = scheme == "adaptive" ? QuadratureScheme::adaptive
                                           : QuadratureScheme::laguerre;
        return spec;
    }
    McParams mc() const { return {trials, seed, threads}; }

    void write_config(JsonWriter& w, const std::string& command) const {
        w.key("command").value(command);
        w.key("space");
        w.beginObject();
        w.key("p").value(p);
        w.key("q").value(parse_exponent_or_inf(q_text));
        w.key("alpha").value(alpha);
        w.endObject();
        w.key("quadrature");
        w.beginObject();
        w.key("nodes").value(nodes);
        w.key("scheme").value(scheme);
        w.key("rel_tol").value(tol);
        w.endObject();
        w.key("trials").value(trials);
        w.key("seed").value(seed);
        w.key("threads").value(static_cast<std::uint64_t>(resolve_thread_count(threads)));
    }
};

void add_space_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--p", opts.p, "inner Hardy exponent p > 0");
    cmd->add_option("--q", opts.q_text, "outer exponent q > 0, or 'inf' for the Hardy space");
    cmd->add_option("--alpha", opts.alpha, "weight exponent alpha > -1");
}

void add_numeric_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--nodes", opts.nodes, "Laguerre node count")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", opts.tol, "quadrature target relative tolerance");
    cmd->add_option("--scheme", opts.scheme, "laguerre | adaptive")
        ->check(CLI::IsMember({"laguerre", "adaptive"}));
    cmd->add_option("--mc-trials", opts.trials, "Monte Carlo trial count");
    cmd->add_option("--seed", opts.seed, "master seed");
    cmd->add_option("--threads", opts.threads,
                    "worker threads (default: DIRICHLET_THREADS env, else 1)");
}

// ---------------------------------------------------------------------- norm

int run_norm(const CommonOpts& opts, const std::string& in_path, const std::string& inner_text,
             const std::string& out_path) {
    DirichletPolynomial f = load_series(in_path);
    InnerNorm inner = InnerNorm::automatic;
    if (inner_text == "exact") inner = InnerNorm::exact_even;
    if (inner_text == "mc") inner = InnerNorm::monte_carlo;

    NormEstimate est = mixed_norm(f, opts.space(), opts.quad(), inner, opts.mc());

    JsonWriter w;
    w.beginObject();
    w.key("config");
    w.beginObject();
    opts.write_config(w, "norm");
    w.key("input").value(in_path);
    w.key("inner").value(inner_text);
    w.endObject();
    w.key("estimate");
    write_norm_estimate(w, est);
    w.endObject();
    emit(w.str(), out_path);
    return kExitOk;
}

// -------------------------------------------------------------------- decide

struct DecideArgs {
    double p = 2, q = 2, alpha = 0, u = 2, v = 2, beta = 0;
    std::string q_text = "2", v_text = "2";
    unsigned degree = 0;
    std::string direction = "hardy-to-mixed";
};

int run_decide(const std::string& kind, const DecideArgs& args, const std::string& out_path) {
    RegionVerdict verdict;
    double q = parse_exponent_or_inf(args.q_text);
    double v = parse_exponent_or_inf(args.v_text);
    Direction dir = args.direction == "mixed-to-hardy" ? Direction::mixed_to_hardy
                                                       : Direction::hardy_to_mixed;
    if (kind == "inclusion") {
        verdict = inclusion_decide(args.p, q, args.alpha, args.u, v, args.beta);
    } else if (kind == "random") {
        verdict = random_embedding_decide({args.p, q, args.alpha}, {args.u, v, args.beta});
    } else if (kind == "random-hardy") {
        verdict = random_embedding_decide(SpaceParams::hardy(args.p),
                                          SpaceParams::hardy(args.u));
    } else if (kind == "random-bergman") {
        verdict = random_embedding_decide(SpaceParams::bergman(args.p, args.alpha),
                                          SpaceParams::bergman(args.u, args.beta));
    } else if (kind == "hardy-mixed") {
        verdict = hardy_mixed_inclusion_decide(args.p, args.u, v, args.alpha, dir);
    } else if (kind == "littlewood-disk") {
        verdict = littlewood_disk_decide(args.p, q);
    } else if (kind == "superposition") {
        verdict = superposition_decide(args.degree, args.p, q, args.alpha, args.u, v, args.beta);
    } else if (kind == "superposition-bergman") {
        verdict = superposition_decide(args.degree, args.p, args.p, args.alpha, q, q, args.beta);
    } else if (kind == "superposition-hardy") {
        verdict = superposition_hardy_decide(args.degree, args.p, args.u, v, args.alpha, dir);
    } else {
        throw std::domain_error("unknown decide kind: " + kind);
    }

    JsonWriter w;
    w.beginObject();
    w.key("config");
    w.beginObject();
    w.key("command").value("decide");
    w.key("kind").value(kind);
    w.key("p").value(args.p);
    w.key("q").value(q);
    w.key("alpha").value(args.alpha);
    w.key("u").value(args.u);
    w.key("v").value(v);
    w.key("beta").value(args.beta);
    if (kind.rfind("superposition", 0) == 0)
        w.key("N").value(static_cast<std::uint64_t>(args.degree));
    if (kind == "hardy-mixed" || kind == "superposition-hardy")
        w.key("direction").value(args.direction);
    w.endObject();
    w.key("verdict");
    write_verdict(w, verdict);
    w.endObject();
    emit(w.str(), out_path);
    return kExitOk;
}

// ------------------------------------------------------------------- witness

int run_witness(const std::string& family, double beta, double v, double alpha, double q,
                unsigned level, unsigned k, double eta, std::uint64_t max_index,
                const std::string& out_path) {
    DirichletPolynomial f;
    JsonWriter w;
    w.beginObject();
    w.key("config");
    w.beginObject();
    w.key("command").value("witness");
    w.key("family").value(family);
    if (family == "f1") {
        f = witness_f1(beta, v, level);
        w.key("beta").value(beta);
        w.key("v").value(v);
        w.key("level").value(static_cast<std::uint64_t>(level));
    } else if (family == "f2") {
        f = witness_f2(alpha, q, v, level);
        w.key("alpha").value(alpha);
        w.key("q").value(q);
        w.key("v").value(v);
        w.key("level").value(static_cast<std::uint64_t>(level));
    } else if (family == "f3") {
        f = witness_f3(k, eta, max_index);
        w.key("k").value(static_cast<std::uint64_t>(k));
        w.key("eta").value(eta);
        w.key("max_index").value(max_index);
    } else {
        throw std::domain_error("unknown witness family: " + family);
    }
    w.endObject();
    w.key("series");
    // inline the terms array in the same 17-digit format
    w.beginObject().key("terms").beginArray();
    for (const auto& [n, a] : f.terms())
        w.beginArray().value(n).value(a.real()).value(a.imag()).endArray();
    w.endArray().endObject();
    w.endObject();
    emit(w.str(), out_path);
    return kExitOk;
}

// ----------------------------------------------------------------- randomize

int run_randomize(const std::string& in_path, const std::string& model_text, std::uint64_t seed,
                  const std::string& out_path) {
    DirichletPolynomial f = load_series(in_path);
    RandomModel model{random_kind_from_string(model_text), seed};
    DirichletPolynomial g = randomize(f, model);

    JsonWriter w;
    w.beginObject();
    w.key("config");
    w.beginObject();
    w.key("command").value("randomize");
    w.key("input").value(in_path);
    w.key("model").value(model_text);
    w.key("seed").value(seed);
    w.endObject();
    w.key("series");
    w.beginObject().key("terms").beginArray();
    for (const auto& [n, a] : g.terms())
        w.beginArray().value(n).value(a.real()).value(a.imag()).endArray();
    w.endArray().endObject();
    w.endObject();
    emit(w.str(), out_path);
    return kExitOk;
}

// ---------------------------------------------------------------- experiment

int run_experiment(const CommonOpts& opts, const std::string& in_path,
                   const std::string& generator, const std::string& mode,
                   const std::string& model_text, const std::string& schedule_text,
                   bool strict, const std::string& csv_path, const std::string& out_path) {
    std::vector<std::uint64_t> schedule = parse_schedule(schedule_text);

    std::function<std::complex<double>(std::uint64_t)> coeff;
    if (!in_path.empty()) {
        auto f = std::make_shared<DirichletPolynomial>(load_series(in_path));
        coeff = [f](std::uint64_t n) { return f->coefficient(n); };
    } else {
        coeff = named_generator(generator);
    }

    ExperimentReport report;
    if (mode == "symbol") {
        report = symbol_membership(coeff, opts.space(), schedule, opts.quad());
    } else if (mode == "sample") {
        report = partial_sum_experiment(coeff, opts.space(), random_kind_from_string(model_text),
                                        schedule, opts.trials, opts.seed, opts.threads,
                                        opts.quad());
    } else {
        throw std::domain_error("experiment mode must be symbol or sample");
    }

    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "N,stat\n";
        char buf[48];
        for (std::size_t i = 0; i < report.schedule.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%llu,%.17g\n",
                          static_cast<unsigned long long>(report.schedule[i]), report.stats[i]);
            csv << buf;
        }
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open csv file: " + csv_path);
        out << csv.str();
    }

    JsonWriter w;
    w.beginObject();
    w.key("config");
    w.beginObject();
    opts.write_config(w, "experiment");
    w.key("mode").value(mode);
    if (!in_path.empty())
        w.key("input").value(in_path);
    else
        w.key("generator").value(generator);
    if (mode == "sample") w.key("model").value(model_text);
    w.key("schedule").value(schedule_text);
    w.key("strict").value(strict);
    w.endObject();
    w.key("report");
    write_experiment_report(w, report);
    w.endObject();
    emit(w.str(), out_path);

    if (strict && report.verdict == Verdict::inconclusive) return kExitInconclusive;
    return kExitOk;
}

// -------------------------------------------------------------------- region

int run_region(const std::string& decider, const std::string& grid_text, double alpha,
               double beta, double u, double v, const std::string& out_path) {
    std::string tag = decider;
    double a = alpha, b = beta;
    if (decider == "fig1") {
        tag = "random-hardy";
    } else if (decider == "fig2") {
        tag = "littlewood-disk";
    } else if (decider == "fig3") {
        tag = "random-bergman", a = 0.0, b = 1.0;
    } else if (decider == "fig4") {
        tag = "random-bergman", a = 0.0, b = 0.0;
    } else if (decider == "fig5") {
        tag = "random-bergman", a = 1.0, b = 0.0;
    }
    auto [p_axis, q_axis] = parse_grid(grid_text);
    std::string csv = region_grid_csv(grid_decider(tag, a, b, u, v), p_axis, q_axis);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << csv;
    }
    return kExitOk;
}

// ------------------------------------------------------------------ selftest

int run_selftest() {
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
        double v = mu_alpha_integral([](double) { return 1.0; }, alpha);
        check(std::fabs(v - 1.0) <= 1e-12,
              "quadrature normalization at alpha=" + std::to_string(alpha));
    }

    {
        DirichletPolynomial two{{2, {1.0, 0.0}}};
        double want = std::pow(2.0 / (2.0 + 2.0 * std::log(2.0)), 0.5);
        double got = mixed_norm(two, {2.0, 2.0, 0.0}).value;
        check(std::fabs(got - want) <= 1e-8, "monomial Bergman-2 closed form");
    }

    {
        DirichletPolynomial f{{2, {1.0, 0.0}}, {3, {1.0, 0.0}}};
        DirichletPolynomial sq = multiply(f, f);
        check(sq.coefficient(4) == std::complex<double>(1, 0) &&
                  sq.coefficient(6) == std::complex<double>(2, 0) &&
                  sq.coefficient(9) == std::complex<double>(1, 0),
              "two-prime square expansion");
        auto rep = prop_nn_check(f, 2, 1);
        check(rep.relative_deviation <= 1e-12, "power identity deviation");
    }

    check(inclusion_decide(4, 4, 0, 2, 4, 1).included, "inclusion clause i");
    check(inclusion_decide(2, 2, 0, 2, 4, 1).rule == "em-ii", "inclusion clause ii");
    check(!inclusion_decide(1, 2, 0, 2, 2, 0).included, "inclusion leading failure");
    check(!random_embedding_decide(SpaceParams::hardy(1.0), SpaceParams::hardy(4.0)).included &&
              random_embedding_decide(SpaceParams::hardy(2.0), SpaceParams::hardy(4.0)).included,
          "random Hardy threshold at p=2");
    check(!superposition_decide(3, 4, 4, 0, 2, 2, 0).included &&
              superposition_decide(2, 4, 4, 0, 2, 2, 0).included,
          "superposition Bergman degree bound");

    {
        DirichletPolynomial f{{2, {1.0, 0.0}}, {3, {1.0, 0.0}}};
        NormEstimate a = hp_norm_mc(f, 3.0, {20000, 7});
        NormEstimate b = hp_norm_mc(f, 3.0, {20000, 7});
        check(a.value == b.value && a.error == b.error, "Monte Carlo determinism");
        NormEstimate h2 = hp_norm_mc(f, 2.0, {20000, 11});
        check(std::fabs(h2.value - std::sqrt(2.0)) <= 3.0 * h2.error,
              "Monte Carlo H2 cross-check");
    }

    std::printf("%s\n", failures == 0 ? "selftest: all checks passed"
                                      : "selftest: FAILURES detected");
    return failures == 0 ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet polynomial norms, random series experiments, and region deciders"};
    app.require_subcommand(1);

    CommonOpts norm_opts;
    std::string norm_in = "-", norm_inner = "auto", norm_out;
    CLI::App* norm_cmd = app.add_subcommand("norm", "norm of a series in a (p, q, alpha) space");
    norm_cmd->add_option("--in", norm_in, "series JSON file, or - for stdin");
    add_space_options(norm_cmd, norm_opts);
    add_numeric_options(norm_cmd, norm_opts);
    norm_cmd->add_option("--inner", norm_inner, "inner norm: auto | exact | mc")
        ->check(CLI::IsMember({"auto", "exact", "mc"}));
    norm_cmd->add_option("--out", norm_out, "output file (default stdout)");

    DecideArgs dargs;
    std::string decide_kind, decide_out;
    CLI::App* decide_cmd = app.add_subcommand("decide", "evaluate a region decision procedure");
    decide_cmd->add_option("kind", decide_kind,
                           "inclusion | random | random-hardy | random-bergman | hardy-mixed | "
                           "littlewood-disk | superposition | superposition-bergman | "
                           "superposition-hardy")
        ->required();
    std::vector<std::string> decide_params;
    decide_cmd->add_option("params", decide_params,
                           "positional parameters p q alpha u v beta, e.g. "
                           "`decide inclusion 4 4 0 2 4 1`");
    decide_cmd->add_option("--p", dargs.p);
    decide_cmd->add_option("--q", dargs.q_text);
    decide_cmd->add_option("--alpha", dargs.alpha);
    decide_cmd->add_option("--u", dargs.u);
    decide_cmd->add_option("--v", dargs.v_text);
    decide_cmd->add_option("--beta", dargs.beta);
    decide_cmd->add_option("--N", dargs.degree, "polynomial degree for superposition kinds");
    decide_cmd->add_option("--direction", dargs.direction)
        ->check(CLI::IsMember({"hardy-to-mixed", "mixed-to-hardy"}));
    decide_cmd->add_option("--out", decide_out);

    std::string wit_family, wit_out;
    double wit_beta = 0.0, wit_v = 1.0, wit_alpha = 0.0, wit_q = 1.0, wit_eta = 0.5;
    unsigned wit_level = 3, wit_k = 1;
    std::uint64_t wit_max_index = 1024;
    CLI::App* wit_cmd = app.add_subcommand("witness", "generate a sharpness witness family");
    wit_cmd->add_option("family", wit_family, "f1 | f2 | f3")->required();
    wit_cmd->add_option("--beta", wit_beta);
    wit_cmd->add_option("--v", wit_v);
    wit_cmd->add_option("--alpha", wit_alpha);
    wit_cmd->add_option("--q", wit_q);
    wit_cmd->add_option("--level", wit_level, "lacunary truncation level (f1/f2, max 5)");
    wit_cmd->add_option("--k", wit_k, "prime count (f3)");
    wit_cmd->add_option("--eta", wit_eta, "Euler factor exponent (f3)");
    wit_cmd->add_option("--max-index", wit_max_index, "truncation index bound (f3)");
    wit_cmd->add_option("--out", wit_out);

    std::string rnd_in = "-", rnd_model = "bernoulli", rnd_out;
    std::uint64_t rnd_seed = 1;
    CLI::App* rnd_cmd = app.add_subcommand("randomize", "multiply coefficients by model draws");
    rnd_cmd->add_option("--in", rnd_in);
    rnd_cmd->add_option("--model", rnd_model)->check(
        CLI::IsMember({"bernoulli", "steinhaus", "gaussian"}));
    rnd_cmd->add_option("--seed", rnd_seed);
    rnd_cmd->add_option("--out", rnd_out);

    CommonOpts exp_opts;
    std::string exp_in, exp_gen = "harmonic", exp_mode = "symbol", exp_model = "bernoulli";
    std::string exp_schedule = "16:4:6", exp_csv, exp_out;
    bool exp_strict = false;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "membership experiments along truncations");
    exp_cmd->add_option("--in", exp_in, "series JSON file (otherwise --generator)");
    exp_cmd->add_option("--generator", exp_gen, "harmonic | inverse-sqrt | constant | zero");
    exp_cmd->add_option("--mode", exp_mode, "symbol (deterministic functional) | sample (medians)")
        ->check(CLI::IsMember({"symbol", "sample"}));
    exp_cmd->add_option("--model", exp_model)->check(
        CLI::IsMember({"bernoulli", "steinhaus", "gaussian"}));
    exp_cmd->add_option("--schedule", exp_schedule, "comma list or start:factor:count");
    add_space_options(exp_cmd, exp_opts);
    add_numeric_options(exp_cmd, exp_opts);
    exp_cmd->add_flag("--strict", exp_strict, "exit 4 when the verdict is inconclusive");
    exp_cmd->add_option("--csv", exp_csv, "write the N,stat trajectory as CSV");
    exp_cmd->add_option("--out", exp_out);

    std::string reg_decider, reg_grid = "0.5:4:14,0.5:8:30", reg_out;
    double reg_alpha = 0.0, reg_beta = 0.0, reg_u = 2.0, reg_v = 2.0;
    CLI::App* reg_cmd = app.add_subcommand("region", "CSV grid of a region decider");
    reg_cmd->add_option("decider", reg_decider,
                        "fig1..fig5 | random-bergman | random-hardy | littlewood-disk | inclusion")
        ->required();
    reg_cmd->add_option("--grid", reg_grid, "pmin:pmax:steps,qmin:qmax:steps");
    reg_cmd->add_option("--alpha", reg_alpha);
    reg_cmd->add_option("--beta", reg_beta);
    reg_cmd->add_option("--u", reg_u);
    reg_cmd->add_option("--v", reg_v);
    reg_cmd->add_option("--out", reg_out, "output CSV file (default stdout)");

    app.add_subcommand("selftest", "run built-in sanity checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (norm_cmd->parsed()) return run_norm(norm_opts, norm_in, norm_inner, norm_out);
        if (decide_cmd->parsed()) {
            // positional form: q and v keep their text so "inf" passes through
            const auto& vals = decide_params;
            if (vals.size() >= 1) dargs.p = std::stod(vals[0]);
            if (vals.size() >= 2) dargs.q_text = vals[1];
            if (vals.size() >= 3) dargs.alpha = std::stod(vals[2]);
            if (vals.size() >= 4) dargs.u = std::stod(vals[3]);
            if (vals.size() >= 5) dargs.v_text = vals[4];
            if (vals.size() >= 6) dargs.beta = std::stod(vals[5]);
            return run_decide(decide_kind, dargs, decide_out);
        }
        if (wit_cmd->parsed())
            return run_witness(wit_family, wit_beta, wit_v, wit_alpha, wit_q, wit_level, wit_k,
                               wit_eta, wit_max_index, wit_out);
        if (rnd_cmd->parsed()) return run_randomize(rnd_in, rnd_model, rnd_seed, rnd_out);
        if (exp_cmd->parsed())
            return run_experiment(exp_opts, exp_in, exp_gen, exp_mode, exp_model, exp_schedule,
                                  exp_strict, exp_csv, exp_out);
        if (reg_cmd->parsed()) return run_region(reg_decider, reg_grid, reg_alpha, reg_beta,
                                                 reg_u, reg_v, reg_out);
        return run_selftest();
    } catch (const std::overflow_error& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
