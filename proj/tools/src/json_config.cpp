#include "json_config.hpp"

#include <json.hpp>

namespace ddc::cli {
namespace {

std::string scalar_text(const nlohmann::json& value) {
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_boolean()) {
        return value.get<bool>() ? "true" : "false";
    }
    if (value.is_number() || value.is_null()) {
        return value.dump();
    }
    throw CLI::ConversionError("nested objects are not supported in config files");
}

} // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty() || opt->get_configurable() == false) {
            continue;
        }
        const std::string& name = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& results = opt->results();
            if (results.size() == 1) {
                doc[name] = results.front();
            } else {
                doc[name] = results;
            }
        } else if (default_also && !opt->get_default_str().empty()) {
            doc[name] = opt->get_default_str();
        }
    }
    return doc.dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw CLI::ConversionError("config must be a JSON object");
    }
    std::vector<std::string> parents;
    if (root_ != nullptr) {
        for (const CLI::App* sub : root_->get_subcommands()) {
            parents.push_back(sub->get_name());
            break;
        }
    }
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
            for (const auto& element : value) {
                item.inputs.push_back(scalar_text(element));
            }
        } else {
            item.inputs.push_back(scalar_text(value));
        }
        items.push_back(std::move(item));
    }
    return items;
}

} // namespace ddc::cli
