// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path-to-toda_bo>
#include "todabo/evolve.hpp"
#include "todabo/verify.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace todabo;

namespace {

// Pinned limits.
constexpr double soliton_budget_s = 120;
constexpr double bracket_budget_s = 300;
constexpr double lemma_budget_s = 600;
constexpr double evolve_mode_tol = 1e-6;
constexpr double evolve_eta0_tol = 1e-12;
constexpr double evolve_I2_tol = 1e-6;
constexpr double halving_lo = 12, halving_hi = 20;

bool all_ok = true;

void line(int n, bool pass, const std::string& what)
{
    all_ok = all_ok && pass;
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << what << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct SuiteOutcome {
    bool pass = true;
    double seconds = 0;
    std::string first_failure;
    std::size_t checks = 0;
};

SuiteOutcome suite(std::string_view filter, const VerifyConfig& cfg, bool require_exact_zero)
{
    auto t0 = std::chrono::steady_clock::now();
    auto reports = run_suite(filter, cfg);
    SuiteOutcome o;
    o.seconds = seconds_since(t0);
    o.checks = reports.size();
    for (const auto& r : reports) {
        bool ok = r.pass && (!require_exact_zero || r.is_exact_zero);
        if (!ok && o.pass)
            o.first_failure = r.name + ": " + r.detail;
        o.pass = o.pass && ok;
    }
    return o;
}

int run_command(const std::string& cmd)
{
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_1()
{
    VerifyConfig cfg;
    auto o = suite("soliton-exact", cfg, true);
    bool ok = o.pass && o.checks == 7 && o.seconds < soliton_budget_s && cfg.solitons >= 3 && cfg.samples >= 5;
    line(1, ok, "soliton-exact suite, n=1..3, 5 samples each, zero residuals (" + fmt(o.seconds) + " s)" +
                    (o.first_failure.empty() ? "" : "; " + o.first_failure));
}

void criterion_2()
{
    VerifyConfig cfg;
    cfg.bracket = AlgebraTruncation{6, 12, 6};
    auto o = suite("bracket", cfg, true);
    bool ok = o.pass && o.checks == 12 && o.seconds < bracket_budget_s;
    line(2, ok, "bracket suite at N_z=6, N_modes=12, D_deg=6 (" + fmt(o.seconds) + " s)" +
                    (o.first_failure.empty() ? "" : "; " + o.first_failure));
}

void criterion_3()
{
    VerifyConfig cfg;
    cfg.lemma = AlgebraTruncation{3, 6, 6};
    auto o = suite("lemma", cfg, true);
    bool ok = o.pass && o.checks == 6 && o.seconds < lemma_budget_s;
    line(3, ok, "lemma family at N_z=3, N_modes=6, D_deg=6 (" + fmt(o.seconds) + " s)" +
                    (o.first_failure.empty() ? "" : "; " + o.first_failure));
}

void criterion_4()
{
    VerifyConfig cfg;
    auto r = run_check(IdentityId::conj_iom, cfg);
    line(4, r.pass, "conj-iom k<=3, n<=2, q=1/4, N=48 (max error " + r.max_abs.decimal(3) + "; " + r.detail + ")");
}

void criterion_5()
{
    VerifyConfig cfg;
    auto o = suite("m*-consistency", cfg, false);
    bool ok = o.pass && o.checks == 2 && cfg.m_points == 20;
    line(5, ok, "M-consistency: exact Newton identities k<=4 at 20 points, kernels at N=48" +
                    (o.first_failure.empty() ? "" : "; " + o.first_failure));
}

void criterion_6()
{
    ParamPoint p(Scalar(1, 2), Scalar(1, 8), {Scalar(1, 7)});
    auto init = soliton_initial(p, {0.4}, 64);
    RunConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 1000;
    auto res = run(init.state, cfg, init.reference);
    double mode_err = res.max_mode_error.value_or(1e300);
    double ratio = step_halving_ratio(init.state, 0.1, 1.0);
    bool ok = !res.blew_up && mode_err < evolve_mode_tol && res.max_I1_drift < evolve_eta0_tol &&
              res.max_I2_rel_drift < evolve_I2_tol && ratio >= halving_lo && ratio <= halving_hi;
    line(6, ok, "evolve n=1 soliton, N=64, dt=1e-3, t<=1 (mode error " + fmt(mode_err) + ", eta0 drift " +
                    fmt(res.max_I1_drift) + ", I2 drift " + fmt(res.max_I2_rel_drift) + ", halving ratio " +
                    fmt(ratio) + ")");
}

void criterion_7(const std::string& exe)
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("toda_bo_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto verify = [&](const std::string& args, const fs::path& out) {
        return run_command("'" + exe + "' verify " + args + " --out '" + out.string() + "' 2>/dev/null");
    };
    int c1 = verify("--identity all --seed 7", dir / "a.json");
    int c2 = verify("--identity all --seed 7", dir / "b.json");
    std::string a = slurp(dir / "a.json"), b = slurp(dir / "b.json");
    bool same = !a.empty() && a == b;
    int c_usage = verify("--identity bogus", dir / "c.json");
    int c_fail = verify("--identity lemma-3-2 --trunc-deg 1", dir / "d.json");
    int c_flag = run_command("'" + exe + "' verify --no-such-flag >/dev/null 2>&1");
    bool ok = same && c1 == 0 && c2 == 0 && c_usage == 2 && c_fail == 1 && c_flag == 2;
    fs::remove_all(dir);
    line(7, ok, "determinism and exit codes (identical=" + std::string(same ? "yes" : "no") + ", all=" +
                    std::to_string(c1) + "/" + std::to_string(c2) + ", usage=" + std::to_string(c_usage) +
                    ", failing=" + std::to_string(c_fail) + ", bad flag=" + std::to_string(c_flag) + ")");
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: acceptance <path-to-toda_bo>\n";
        return 2;
    }
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(argv[1]);
    return all_ok ? 0 : 1;
}
