#include "todabo/verify.hpp"

#include <json.hpp>

namespace todabo {

std::string report_json(const std::vector<CheckReport>& reports, bool timings)
{
    using json = nlohmann::ordered_json;
    json checks = json::array();
    for (const auto& r : reports) {
        json c;
        c["id"] = r.name;
        c["mode"] = std::string(mode_name(r.mode));
        c["pass"] = r.pass;
        c["params"] = {{"seed", r.seed}, {"samples", r.samples}, {"truncation", r.truncation}};
        c["residual"] = {{"is_exact_zero", r.is_exact_zero},
                         {"max_abs", r.max_abs.str()},
                         {"max_abs_decimal", r.max_abs.decimal(30)},
                         {"compared", r.compared}};
        c["detail"] = r.detail;
        if (timings)
            c["elapsed_ms"] = r.elapsed_ms;
        checks.push_back(std::move(c));
    }
    json doc;
    doc["schema"] = "toda-bo-report/1";
    doc["checks"] = std::move(checks);
    return doc.dump() + "\n";
}

} // namespace todabo
