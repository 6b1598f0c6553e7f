#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roadfield/core_types.hpp"

namespace roadfield {

/// Flat `key = value` configuration. `#` starts a comment; blank lines are ignored.
class Config {
public:
    Config() = default;

    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path& path);

    /// Inserts or replaces a key.
    void set(const std::string& key, const std::string& value);
    /// Applies a `key=value` override string.
    void apply_override(std::string_view assignment);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    /// Throws ConfigError naming the first key not in `allowed`.
    void require_known(std::span<const std::string_view> allowed) const;

    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Keys understood by params_from_config.
std::span<const std::string_view> param_keys();

/// Builds ModelParams from D, d, mu, nu, fp0, reaction (logistic | custom | none)
/// and, for `reaction = custom`, `poly = c1,c2,...` with f(s) = Σ c_k s^k.
/// Missing keys default to D = d = mu = nu = fp0 = 1 with a logistic reaction.
ModelParams params_from_config(const Config& config);

double parse_double(std::string_view text, std::string_view what);
std::vector<double> parse_double_list(std::string_view text, std::string_view what);

}  // namespace roadfield
