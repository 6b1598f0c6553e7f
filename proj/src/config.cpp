#include "roadfield/config.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "roadfield/errors.hpp"

namespace roadfield {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

constexpr std::array<std::string_view, 7> kParamKeys = {"D", "d", "mu", "nu", "fp0", "reaction",
                                                        "poly"};

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
    const std::string s(trim(text));
    if (s.empty()) throw ConfigError("empty value for " + std::string(what));
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        throw ConfigError("cannot parse '" + s + "' as a number for " + std::string(what));
    }
    return value;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        out.push_back(parse_double(piece, what));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

Config Config::parse(std::string_view text) {
    Config config;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (config.has(std::string(key))) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                              std::string(key) + "'");
        }
        config.set(std::string(key), std::string(value));
    }
    return config;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

void Config::apply_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
    }
    const auto key = trim(assignment.substr(0, eq));
    if (key.empty()) throw ConfigError("override with empty key");
    set(std::string(key), std::string(trim(assignment.substr(eq + 1))));
}

std::optional<std::string> Config::get(const std::string& key) const {
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    return std::nullopt;
}

double Config::get_double(const std::string& key, double fallback) const {
    if (auto v = get(key)) return parse_double(*v, key);
    return fallback;
}

std::vector<double> Config::get_list(const std::string& key) const {
    if (auto v = get(key)) return parse_double_list(*v, key);
    return {};
}

void Config::require_known(std::span<const std::string_view> allowed) const {
    for (const auto& [key, value] : entries_) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

std::span<const std::string_view> param_keys() { return kParamKeys; }

ModelParams params_from_config(const Config& config) {
    const double D = config.get_double("D", 1.0);
    const double d = config.get_double("d", 1.0);
    const double mu = config.get_double("mu", 1.0);
    const double nu = config.get_double("nu", 1.0);
    const double fp0 = config.get_double("fp0", 1.0);
    const std::string kind = config.get("reaction").value_or("logistic");

    ReactionFunction reaction = ReactionFunction::logistic(fp0);
    if (kind == "logistic") {
        if (config.has("poly")) throw ConfigError("'poly' is only valid with reaction=custom");
    } else if (kind == "custom") {
        const auto coeffs = config.get_list("poly");
        if (coeffs.empty()) throw ConfigError("reaction=custom requires poly=c1,c2,...");
        reaction = ReactionFunction::polynomial(coeffs);
    } else if (kind == "none") {
        reaction = ReactionFunction::none();
    } else {
        throw ConfigError("unknown reaction '" + kind + "' (expected logistic | custom | none)");
    }

    try {
        return ModelParams(D, d, mu, nu, fp0, std::move(reaction));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace roadfield
