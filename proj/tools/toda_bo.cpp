#include "todabo/evolve.hpp"
#include "todabo/iom.hpp"
#include "todabo/soliton.hpp"
#include "todabo/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace todabo;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f)
        throw std::runtime_error("write to " + path + " failed");
}

json rational(const Scalar& x) { return {{"exact", x.str()}, {"decimal", x.decimal(30)}}; }

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

struct VerifyArgs {
    std::string identity = "all";
    int solitons = 3;
    int samples = 5;
    std::uint64_t seed = 7;
    std::optional<int> trunc_z, trunc_modes, trunc_deg;
    int threads = 0;
    bool timings = false;
    std::string out;
};

int cmd_verify(const VerifyArgs& a)
{
    VerifyConfig cfg;
    cfg.seed = a.seed;
    cfg.solitons = a.solitons;
    cfg.samples = a.samples;
    cfg.threads = a.threads;
    for (AlgebraTruncation* t : {&cfg.bracket, &cfg.lemma}) {
        if (a.trunc_z)
            t->n_z = *a.trunc_z;
        if (a.trunc_modes)
            t->n_modes = *a.trunc_modes;
        if (a.trunc_deg)
            t->d_deg = *a.trunc_deg;
    }
    std::vector<IdentityId> ids;
    try {
        ids = select_identities(a.identity);
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    }
    if (ids.empty())
        throw UsageError("no identity matches '" + a.identity + "'");
    auto reports = run_suite(ids, cfg);
    write_output(a.out, report_json(reports, a.timings));
    bool all = true;
    for (const auto& r : reports) {
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "  " << r.detail << "\n";
        all = all && r.pass;
    }
    return all ? exit_ok : exit_fail;
}

struct IomArgs {
    int k = 3;
    int solitons = 1;
    int modes = 48;
    std::uint64_t seed = 7;
    std::string out;
};

int cmd_iom(const IomArgs& a)
{
    if (a.k < 1 || a.k > max_iom_order)
        throw UsageError("--k must lie in [1, " + std::to_string(max_iom_order) + "]");
    Sampler rng(a.seed);
    Sampler::Options opts;
    opts.s = Scalar(1, 2);
    SolitonPoint sp = sample_convergent_soliton(rng, a.solitons, opts);
    const auto& p = sp.params;
    auto eta = eta_from_taus(p, a.modes, sp.b);
    json doc;
    doc["schema"] = "toda-bo-iom/1";
    doc["params"] = {{"seed", a.seed}, {"point", p.describe()}, {"decay", sp.decay}, {"modes", a.modes}};
    json b = json::array();
    for (const auto& x : sp.b)
        b.push_back(x.str());
    doc["params"]["b"] = b;
    json results = json::array();
    std::vector<Scalar> I;
    bool ok = true;
    for (int k = 1; k <= a.k; ++k) {
        auto r = I_k_def(eta, k, a.modes, p.q());
        I.push_back(r.value);
        Scalar closed = closed_I(k, p);
        Scalar err = (r.value - closed).abs();
        ok = ok && err.to_double() < iom_tolerance;
        results.push_back({{"k", k},
                           {"I_def", rational(r.value)},
                           {"tail_bound", r.tail.decimal(6)},
                           {"closed", rational(closed)},
                           {"error_decimal", err.decimal(30)},
                           {"M_from_I", rational(M_from_I(I, p.q()))},
                           {"closed_M", rational(closed_M(k, p))}});
    }
    doc["results"] = results;
    write_output(a.out, doc.dump() + "\n");
    return ok ? exit_ok : exit_fail;
}

struct EvolveArgs {
    int modes = 64;
    double dt = 1e-3;
    int steps = 1000;
    int check_interval = 100;
    double gamma_re = 0.1, gamma_im = 0.05;
    std::string init = "soliton";
    std::uint64_t seed = 7;
    double decay = 0.5;
    std::string out;
};

int cmd_evolve(const EvolveArgs& a)
{
    if (a.init != "soliton" && a.init != "random")
        throw UsageError("--init must be soliton or random");
    State init;
    Reference reference;
    std::string origin;
    if (a.init == "soliton") {
        // Soliton data fixes q through its own parameters.
        Sampler rng(a.seed);
        Sampler::Options opts;
        opts.s = Scalar(1, 2);
        SolitonPoint sp = sample_convergent_soliton(rng, 1, opts);
        std::vector<double> b;
        for (const auto& x : sp.b)
            b.push_back(x.to_double());
        auto si = soliton_initial(sp.params, b, a.modes);
        init = si.state;
        reference = si.reference;
        origin = sp.params.describe();
    } else {
        init = random_initial(a.seed, a.modes, q_from_gamma({a.gamma_re, a.gamma_im}), 0.1, a.decay);
        origin = "random seed=" + std::to_string(a.seed);
    }
    RunConfig cfg{a.dt, a.steps, a.check_interval};
    RunResult res = run(init, cfg, reference);
    std::ostringstream os;
    for (const auto& s : res.samples) {
        json modes = json::array();
        for (const auto& z : s.modes)
            modes.push_back(complex_pair(z));
        os << json{{"t", s.t}, {"modes", modes}, {"I1", complex_pair(s.I1)}, {"I2", complex_pair(s.I2)}}.dump()
           << "\n";
    }
    json summary = {{"init", origin},
                    {"q", complex_pair(init.q)},
                    {"max_I1_drift", res.max_I1_drift},
                    {"max_I2_rel_drift", res.max_I2_rel_drift},
                    {"blew_up", res.blew_up}};
    if (res.max_mode_error)
        summary["max_mode_error"] = *res.max_mode_error;
    if (!res.message.empty())
        summary["message"] = res.message;
    os << json{{"summary", summary}}.dump() << "\n";
    write_output(a.out, os.str());
    return res.blew_up ? exit_fail : exit_ok;
}

struct SolitonArgs {
    std::string spec;
    bool eval = false;
    int modes = 8;
    std::string out;
};

json tau_json(const SolitonTau& t)
{
    json terms = json::array();
    for (const auto& term : t.terms())
        terms.push_back({{"subset", term.subset}, {"z_degree", term.z_degree}, {"coefficient", term.coefficient.str()}});
    return terms;
}

int cmd_soliton(const SolitonArgs& a)
{
    std::ifstream f(a.spec);
    if (!f)
        throw UsageError("cannot read spec file " + a.spec);
    std::stringstream buf;
    buf << f.rdbuf();
    std::optional<SolitonPoint> parsed;
    try {
        parsed = parse_soliton_spec(buf.str());
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    }
    const SolitonPoint& sp = *parsed;
    const auto& p = sp.params;
    json doc;
    doc["schema"] = "toda-bo-soliton/1";
    doc["point"] = p.describe();
    doc["decay"] = sp.decay;
    doc["tau_plus"] = tau_json(make_tau_plus(p));
    doc["tau_minus"] = tau_json(make_tau_minus(p));
    if (a.eval) {
        json tp = json::object(), tm = json::object();
        auto lp = make_tau_plus(p).evaluate(sp.b), lm = make_tau_minus(p).evaluate(sp.b);
        for (int d = lp.lo(); d <= lp.hi(); ++d)
            tp[std::to_string(d)] = lp.at(d).str();
        for (int d = lm.lo(); d <= lm.hi(); ++d)
            tm[std::to_string(d)] = lm.at(d).str();
        doc["tau_plus_at_b"] = tp;
        doc["tau_minus_at_b"] = tm;
        if (sp.decay < 0.9) {
            auto eta = eta_from_taus(p, a.modes, sp.b);
            json modes = json::object();
            for (int m = -a.modes; m <= a.modes; ++m)
                modes[std::to_string(m)] = eta[m].decimal(30);
            doc["eta_modes"] = modes;
            doc["eta_tail_bound"] = eta.tail.decimal(6);
        } else {
            doc["eta_modes"] = nullptr;
            doc["eta_note"] = "expansion on |z| = 1 not available for these amplitudes";
        }
    }
    write_output(a.out, doc.dump() + "\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and numerical checks for the q-deformed Benjamin-Ono hierarchy"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run identity checks and write a JSON report");
    verify->add_option("--identity", va.identity, "Identity id, group (bracket, lemma, soliton-exact, iom), glob or all");
    verify->add_option("--solitons", va.solitons, "Largest soliton number")->check(CLI::Range(0, 6));
    verify->add_option("--samples", va.samples, "Parameter samples per soliton number")->check(CLI::Range(1, 1000));
    verify->add_option("--seed", va.seed, "Sampler seed");
    verify->add_option("--trunc-z", va.trunc_z, "z-degree window")->check(CLI::Range(0, 64));
    verify->add_option("--trunc-modes", va.trunc_modes, "Largest mode index")->check(CLI::Range(1, 24));
    verify->add_option("--trunc-deg", va.trunc_deg, "Degree budget of the truncated algebra")->check(CLI::Range(0, 24));
    verify->add_option("--threads", va.threads, "Worker threads (0: hardware)")->check(CLI::Range(0, 1024));
    verify->add_flag("--timings", va.timings, "Include elapsed_ms in the report");
    verify->add_option("--out", va.out, "Report path (default stdout)");

    IomArgs ia;
    auto* iom = app.add_subcommand("iom", "Integrals of motion on a sampled soliton");
    iom->add_option("--k", ia.k, "Largest order")->check(CLI::Range(1, max_iom_order));
    iom->add_option("--solitons", ia.solitons, "Soliton number")->check(CLI::Range(0, 4));
    iom->add_option("--modes", ia.modes, "Mode truncation N")->check(CLI::Range(1, 256));
    iom->add_option("--seed", ia.seed, "Sampler seed");
    iom->add_option("--out", ia.out, "Output path (default stdout)");

    EvolveArgs ea;
    auto* evolve = app.add_subcommand("evolve", "Integrate the truncated mode system with RK4");
    evolve->add_option("--modes", ea.modes, "Mode truncation N")->check(CLI::Range(1, 256));
    evolve->add_option("--dt", ea.dt, "Time step")->check(CLI::PositiveNumber);
    evolve->add_option("--steps", ea.steps, "Number of steps")->check(CLI::Range(1, 100000000));
    evolve->add_option("--check-interval", ea.check_interval, "Steps between samples")->check(CLI::Range(1, 100000000));
    evolve->add_option("--gamma-re", ea.gamma_re, "Re gamma (random init)");
    evolve->add_option("--gamma-im", ea.gamma_im, "Im gamma (random init)")->check(CLI::Range(0.0, 1e9));
    evolve->add_option("--init", ea.init, "soliton or random");
    evolve->add_option("--seed", ea.seed, "Seed of the initial data");
    evolve->add_option("--decay", ea.decay, "Decay rate of random data")->check(CLI::Range(0.01, 0.99));
    evolve->add_option("--out", ea.out, "Output path (default stdout)");

    SolitonArgs sa;
    auto* soliton = app.add_subcommand("soliton", "Inspect a soliton given as JSON");
    soliton->add_option("--spec", sa.spec, "Spec file")->required();
    soliton->add_flag("--eval", sa.eval, "Evaluate tau at the amplitudes and expand eta");
    soliton->add_option("--modes", sa.modes, "Number of eta modes to print")->check(CLI::Range(0, 256));
    soliton->add_option("--out", sa.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*verify)
            return cmd_verify(va);
        if (*iom)
            return cmd_iom(ia);
        if (*evolve)
            return cmd_evolve(ea);
        return cmd_soliton(sa);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_fail;
    }
}
