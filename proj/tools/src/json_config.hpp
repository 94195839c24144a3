#pragma once

#include <CLI11.hpp>

namespace ddc::cli {

// Flat JSON object of `"long-option-name": value` pairs. Arrays become
// repeated values; command-line flags take precedence. Keys are routed to
// the subcommand selected on the command line.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

private:
    const CLI::App* root_;
};

} // namespace ddc::cli
