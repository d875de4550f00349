#include "riskspec/io.hpp"

#include <fstream>

#include "riskspec/errors.hpp"

namespace riskspec {

namespace {

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string("expected a numeric array field '") + key + "'");
    std::vector<double> out;
    for (const auto& x : j[key]) {
        if (!x.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
        out.push_back(x.get<double>());
    }
    return out;
}

double number_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(std::string("expected a numeric field '") + key + "'");
    return j[key].get<double>();
}

} // namespace

Dist parse_dist(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError("distribution JSON must be an object with a string 'type'");
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "discrete")
            return DiscreteDist(number_list(j, "values"), number_list(j, "probs"));
        if (type == "joint") {
            if (!j.contains("atoms") || !j["atoms"].is_array())
                throw ParseError("joint distribution requires an 'atoms' array");
            std::vector<JointDiscreteDist::Atom> atoms;
            for (const auto& a : j["atoms"]) {
                if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
                    !a[2].is_number())
                    throw ParseError("each joint atom must be a [x, y, p] number triple");
                atoms.push_back({a[0].get<double>(), a[1].get<double>(), a[2].get<double>()});
            }
            return JointDiscreteDist(std::move(atoms));
        }
        if (type == "pareto")
            return ContinuousTail::pareto(number_field(j, "a"), number_field(j, "beta"));
        if (type == "two_point_zero_mean")
            return DiscreteDist::two_point_zero_mean(number_field(j, "a"), number_field(j, "b"));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid '") + type + "' distribution: " + e.what());
    }
    throw ParseError("unknown distribution type '" + type + "'");
}

Dist load_dist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open distribution file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return parse_dist(j);
}

} // namespace riskspec
