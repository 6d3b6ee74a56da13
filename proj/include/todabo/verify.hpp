#pragma once

#include "todabo/field.hpp"
#include "todabo/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace todabo {

enum class IdentityId {
    eta_eta,
    xi_xi,
    eta_xi,
    eta_tau_minus,
    eta_tau_plus,
    xi_tau_minus,
    xi_tau_plus,
    hirota_t,
    hirota_tb,
    toda,
    toda_field,
    eta0_xi0,
    tau_shift_lemma,
    hm_pm_1,
    hm_pm_2,
    hm_3,
    to_1,
    to_2,
    to_3,
    conj_iom,
    m2_consistency,
    m3_consistency,
    lemma_3_2,
    lemma_3_3,
    lemma_3_4,
    lemma_3_5,
    prop_t2,
    prop_t3,
};

enum class CheckMode { exact, windowed, convergent };

std::string_view mode_name(CheckMode m);

struct IdentityInfo {
    IdentityId id;
    std::string_view name;
    CheckMode mode;
    /// "bracket", "soliton-exact", "iom" or "lemma".
    std::string_view group;
};

/// Every identity in report order.
const std::vector<IdentityInfo>& identity_table();
const IdentityInfo& identity_info(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

/// Truncation of the mode algebra: comparisons cover |z-degree| <= n_z,
/// modes 0 < |n| <= n_modes and monomial degree <= d_deg - 2.
struct AlgebraTruncation {
    int n_z = 3;
    int n_modes = 6;
    int d_deg = 6;

    Window window() const { return Window{n_z, n_modes, d_deg - 2}; }
};

struct VerifyConfig {
    std::uint64_t seed = 7;
    /// Soliton checks run n = 1..solitons.
    int solitons = 3;
    /// Parameter samples per n for soliton checks and per n for conj-iom.
    int samples = 5;
    AlgebraTruncation bracket{6, 12, 6};
    AlgebraTruncation lemma{3, 6, 6};
    /// Mode window of the convergent checks; residuals are also taken at
    /// one third and two thirds of it.
    int iom_modes = 48;
    /// Parameter points of the exact M-consistency part.
    int m_points = 20;
    /// 0 means hardware concurrency (capped by TODA_BO_THREADS).
    int threads = 0;
};

// Tolerances of the convergent checks.
inline constexpr double iom_tolerance = 1e-10;
inline constexpr double iom_min_decrease = 4.0;
/// Errors below this are at the floor of the numerical mode expansion and
/// exempt from the decrease requirement.
inline constexpr double iom_error_floor = 1e-30;

struct CheckReport {
    IdentityId id{};
    std::string name;
    CheckMode mode{};
    std::uint64_t seed = 0;
    /// One line per parameter sample.
    std::vector<std::string> samples;
    /// Human-readable truncation summary.
    std::string truncation;
    bool is_exact_zero = true;
    Scalar max_abs{0};
    /// Number of compared coefficients or values.
    long compared = 0;
    bool pass = false;
    std::string detail;
    double elapsed_ms = 0;
};

/// Runs one identity. Deterministic in (id, config.seed).
CheckReport run_check(IdentityId id, const VerifyConfig& config);

/// Resolves "all", a group name, an id, or a glob with '*'. Unknown names
/// without '*' throw ArgumentError; a glob may match nothing.
std::vector<IdentityId> select_identities(std::string_view filter);

/// Runs the selected checks on a thread pool, reports in table order.
std::vector<CheckReport> run_suite(std::string_view filter, const VerifyConfig& config);
std::vector<CheckReport> run_suite(const std::vector<IdentityId>& ids, const VerifyConfig& config);

/// Worker count: config value (or hardware concurrency), capped by the
/// TODA_BO_THREADS environment variable.
int effective_threads(int requested);

/// Lemma-family check in the mode algebra.
CheckReport check_lemma_t3_family(IdentityId id, const AlgebraTruncation& trunc, std::uint64_t seed = 7);

/// JSON report with schema tag; elapsed_ms is written only when requested.
std::string report_json(const std::vector<CheckReport>& reports, bool timings = false);

} // namespace todabo
