#include "carl/model.hpp"

#include <set>

#include <json.hpp>

namespace carl {

std::vector<std::string> ModelSpec::all_names() const {
    std::vector<std::string> out = states;
    out.insert(out.end(), algebraics.begin(), algebraics.end());
    return out;
}

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::vector<std::string> name_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw parse_error(std::string("model document: missing array \"") + key + "\"");
    std::vector<std::string> out;
    for (const auto& e : j[key]) {
        if (!e.is_string() || !valid_identifier(e.get<std::string>()))
            throw parse_error(std::string("model document: \"") + key +
                              "\" entries must be identifiers");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<Expr> expr_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw parse_error(std::string("model document: missing array \"") + key + "\"");
    std::vector<Expr> out;
    for (const auto& e : j[key]) {
        if (!e.is_string())
            throw parse_error(std::string("model document: \"") + key +
                              "\" entries must be expression strings");
        out.push_back(parse_expr(e.get<std::string>()));
    }
    return out;
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw parse_error(std::string("model document: guess missing array \"") + key + "\"");
    std::vector<double> out;
    for (const auto& e : j[key]) {
        if (!e.is_number())
            throw parse_error(std::string("model document: guess \"") + key +
                              "\" entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

ModelSpec parse_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("model document: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("model document: top level must be an object");

    ModelSpec m;
    m.name = j.value("name", std::string("unnamed"));
    m.states = name_list(j, "states");
    m.algebraics = name_list(j, "algebraics");
    m.odes = expr_list(j, "odes");
    m.constraints = expr_list(j, "constraints");
    if (!j.contains("guess") || !j["guess"].is_object())
        throw parse_error("model document: missing \"guess\" object");
    m.guess_x = number_list(j["guess"], "x");
    m.guess_z = number_list(j["guess"], "z");

    if (m.states.empty()) throw parse_error("model document: empty system rejected");
    if (m.odes.size() != m.states.size())
        throw parse_error("model document: |odes| must equal |states|");
    if (m.constraints.size() != m.algebraics.size())
        throw parse_error("model document: |constraints| must equal |algebraics|");
    if (m.guess_x.size() != m.states.size() || m.guess_z.size() != m.algebraics.size())
        throw parse_error("model document: guess dimensions must match variable lists");

    std::set<std::string> declared;
    for (const auto& n : m.all_names())
        if (!declared.insert(n).second)
            throw parse_error("model document: duplicate variable name \"" + n + "\"");

    for (const auto& e : m.odes)
        for (const auto& v : variables(e))
            if (!declared.count(v))
                throw parse_error("model document: ode references unknown variable \"" + v + "\"");
    for (const auto& e : m.constraints)
        for (const auto& v : variables(e))
            if (!declared.count(v))
                throw parse_error("model document: constraint references unknown variable \"" +
                                  v + "\"");
    return m;
}

std::string model_to_json(const ModelSpec& m) {
    nlohmann::json j;
    j["name"] = m.name;
    j["states"] = m.states;
    j["algebraics"] = m.algebraics;
    j["odes"] = nlohmann::json::array();
    for (const auto& e : m.odes) j["odes"].push_back(print_expr(e));
    j["constraints"] = nlohmann::json::array();
    for (const auto& e : m.constraints) j["constraints"].push_back(print_expr(e));
    j["guess"]["x"] = m.guess_x;
    j["guess"]["z"] = m.guess_z;
    return j.dump(2);
}

} // namespace carl
