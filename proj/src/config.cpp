#include "oscsum/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oscsum/errors.hpp"

namespace oscsum {

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config file not found: " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        cfg.apply_kv(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void RunConfig::apply_kv(const std::string& key, const std::string& value) {
    try {
        if (key == "seed")
            seed = std::stoull(value);
        else if (key == "A0")
            A0 = std::stod(value);
        else if (key == "rho")
            rho = std::stod(value);
        else if (key == "eps0")
            eps0 = std::stod(value);
        else if (key == "C_max")
            C_max = std::stoi(value);
        else if (key == "theta")
            theta_override = std::stod(value);
        else if (key == "C_vdc")
            C_vdc = std::stod(value);
        else if (key == "C_nonconc")
            C_nonconc = std::stod(value);
        else if (key == "C_osc")
            C_osc = std::stod(value);
        else if (key == "C_cont_sublevel")
            C_cont_sublevel = std::stod(value);
        else if (key == "C_taylor")
            C_taylor = std::stod(value);
        else if (key == "C_condense")
            C_condense = std::stod(value);
        else if (key == "max_lattice")
            max_lattice = std::stoll(value);
        else if (key == "max_Q")
            max_Q = std::stoll(value);
        else if (key == "max_quad")
            max_quad = std::stoll(value);
        else if (key == "s_enum_max")
            s_enum_max = std::stoi(value);
        else if (key == "partitions")
            partitions = std::stoi(value);
        else if (key == "format")
            format = value;
        else
            throw UsageError("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
        throw UsageError("bad config value for " + key + ": " + value);
    }
}

std::string RunConfig::provenance_json() const {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["A0"] = A0;
    j["rho"] = rho;
    j["eps0"] = eps0;
    j["C_max"] = C_max;
    if (theta_override) j["theta"] = *theta_override;
    j["C_vdc"] = C_vdc;
    j["C_nonconc"] = C_nonconc;
    j["C_osc"] = C_osc;
    j["C_cont_sublevel"] = C_cont_sublevel;
    j["C_taylor"] = C_taylor;
    j["C_condense"] = C_condense;
    j["C_meanvalue"] = C_meanvalue;
    j["c_expoly"] = c_expoly;
    j["budgets"] = {{"max_lattice", max_lattice},
                    {"max_Q", max_Q},
                    {"max_quad", max_quad},
                    {"s_enum_max", s_enum_max},
                    {"partitions", partitions}};
    return j.dump();
}

}  // namespace oscsum
