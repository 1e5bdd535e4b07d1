#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evoengine {

/// Stable error codes carried by every exception the library throws.
namespace errc {
inline constexpr std::string_view empty_population = "EMPTY_POPULATION";
inline constexpr std::string_view empty_pool = "EMPTY_POOL";
inline constexpr std::string_view not_a_weight_selector = "NOT_A_WEIGHT_SELECTOR";
inline constexpr std::string_view target_exceeds_pool = "TARGET_EXCEEDS_POOL";
inline constexpr std::string_view pool_too_small = "POOL_TOO_SMALL";
inline constexpr std::string_view infeasible_config = "INFEASIBLE_CONFIG";
inline constexpr std::string_view infeasible_preset = "INFEASIBLE_PRESET";
inline constexpr std::string_view not_a_preset = "NOT_A_PRESET";
inline constexpr std::string_view invalid_argument = "INVALID_ARGUMENT";
inline constexpr std::string_view schema_error = "SCHEMA_ERROR";
inline constexpr std::string_view io_error = "IO_ERROR";
inline constexpr std::string_view cancelled = "CANCELLED";
} // namespace errc

class Error : public std::runtime_error {
public:
    Error(std::string_view code, const std::string& message)
        : std::runtime_error(std::string(code) + ": " + message), code_(code) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace evoengine
