#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aucboot/csv.hpp"
#include "aucboot/simulate.hpp"
#include "aucboot/version.hpp"

namespace aucboot {

/// Flat key-value text: one `key = value` per line, `#` comments, blank
/// lines allowed. This one format serves configs and run manifests; manifest
/// metadata lives under the reserved `run.` prefix, which config parsing
/// ignores, so a manifest is itself a valid config for reproducing a run.
class KeyValueFile {
public:
    static KeyValueFile parse_string(const std::string& text, const std::string& origin = "") {
        KeyValueFile kv;
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string trimmed = trim(line);
            if (trimmed.empty() || trimmed.front() == '#') continue;
            const std::size_t eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                            ": expected `key = value`, got: " + trimmed);
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                            ": empty key");
            kv.set(key, value);
        }
        return kv;
    }

    static KeyValueFile parse_file(const std::filesystem::path& path) {
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot open config file: " + path.string());
        std::ostringstream buf;
        buf << f.rdbuf();
        return parse_string(buf.str(), path.string());
    }

    void set(const std::string& key, const std::string& value) {
        if (values_.find(key) == values_.end()) order_.push_back(key);
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    const std::vector<std::string>& keys() const { return order_; }

    std::string get_string(const std::string& key, const std::string& fallback = "") const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument("config field `" + key +
                                        "`: not a number: " + it->second);
        }
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::uint64_t v = 0;
        const std::string& s = it->second;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw std::invalid_argument("config field `" + key +
                                        "`: not a non-negative integer: " + it->second);
        return v;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "1" || it->second == "true") return true;
        if (it->second == "0" || it->second == "false") return false;
        throw std::invalid_argument("config field `" + key + "`: expected 0/1/true/false, got " +
                                    it->second);
    }

    std::string to_string() const {
        std::string out;
        for (const auto& k : order_) {
            out += k;
            out += " = ";
            out += values_.at(k);
            out += '\n';
        }
        return out;
    }

    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

inline ClassifierKind classifier_from_string(const std::string& s, const std::string& field) {
    if (s == "lda") return ClassifierKind::lda;
    if (s == "qda") return ClassifierKind::qda;
    throw std::invalid_argument("config field `" + field + "`: expected lda or qda, got " + s);
}

inline MetricKind metric_from_string(const std::string& s) {
    if (s == "auc") return MetricKind::auc;
    if (s == "error") return MetricKind::error;
    throw std::invalid_argument("config field `metric`: expected auc or error, got " + s);
}

inline std::vector<std::size_t> parse_size_list(const std::string& s, const std::string& field) {
    std::vector<std::size_t> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        const std::string t = KeyValueFile::trim(cur);
        if (t.empty()) continue;
        try {
            out.push_back(static_cast<std::size_t>(std::stoull(t)));
        } catch (...) {
            throw std::invalid_argument("config field `" + field + "`: bad size entry: " + t);
        }
    }
    if (out.empty())
        throw std::invalid_argument("config field `" + field + "`: no sizes given");
    return out;
}

/// Config keys understood by the experiment commands. Anything else (apart
/// from the `run.` manifest namespace) is rejected by name.
inline const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "dim",        "n1",     "n2",          "delta",       "c",      "trials",
        "bootstraps", "test_per_class",        "classifier",  "classifier2",
        "metric",     "threshold",             "lpob",        "jobs",   "seed",
        "sizes",      "data",   "sweep_case",  "sweep_coord", "sweep_points",
        "sweep_span_sd",
    };
    return keys;
}

inline ExperimentConfig config_from_kv(const KeyValueFile& kv) {
    const auto& known = known_config_keys();
    for (const auto& key : kv.keys()) {
        if (key.rfind("run.", 0) == 0) continue;  // manifest metadata
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("unknown config field `" + key + "`");
    }
    ExperimentConfig cfg;
    cfg.dim = static_cast<std::size_t>(kv.get_u64("dim", cfg.dim));
    cfg.n1 = static_cast<std::size_t>(kv.get_u64("n1", cfg.n1));
    cfg.n2 = static_cast<std::size_t>(kv.get_u64("n2", cfg.n2));
    cfg.delta = kv.get_double("delta", cfg.delta);
    if (kv.has("c")) cfg.shift = kv.get_double("c", 0.0);
    cfg.trials = static_cast<std::size_t>(kv.get_u64("trials", cfg.trials));
    cfg.bootstraps = static_cast<std::size_t>(kv.get_u64("bootstraps", cfg.bootstraps));
    cfg.test_per_class = static_cast<std::size_t>(kv.get_u64("test_per_class", cfg.test_per_class));
    cfg.classifier = classifier_from_string(kv.get_string("classifier", "lda"), "classifier");
    cfg.classifier2 = classifier_from_string(kv.get_string("classifier2", "qda"), "classifier2");
    cfg.metric = metric_from_string(kv.get_string("metric", "auc"));
    cfg.threshold = kv.get_double("threshold", cfg.threshold);
    cfg.lpob = kv.get_bool("lpob", cfg.lpob);
    cfg.jobs = static_cast<std::size_t>(kv.get_u64("jobs", cfg.jobs));
    cfg.seed = kv.get_u64("seed", cfg.seed);
    cfg.validate();
    return cfg;
}

/// Serializes the resolved experiment settings back to config keys.
inline KeyValueFile kv_from_config(const ExperimentConfig& cfg) {
    KeyValueFile kv;
    kv.set("dim", std::to_string(cfg.dim));
    kv.set("n1", std::to_string(cfg.n1));
    kv.set("n2", std::to_string(cfg.n2));
    kv.set("delta", csv_number(cfg.delta));
    if (cfg.shift) kv.set("c", csv_number(*cfg.shift));
    kv.set("trials", std::to_string(cfg.trials));
    kv.set("bootstraps", std::to_string(cfg.bootstraps));
    kv.set("test_per_class", std::to_string(cfg.test_per_class));
    kv.set("classifier", to_string(cfg.classifier));
    kv.set("classifier2", to_string(cfg.classifier2));
    kv.set("metric", to_string(cfg.metric));
    kv.set("threshold", csv_number(cfg.threshold));
    kv.set("lpob", cfg.lpob ? "1" : "0");
    kv.set("jobs", std::to_string(cfg.jobs));
    kv.set("seed", std::to_string(cfg.seed));
    return kv;
}

/// Record of one CLI run: the resolved settings plus enough metadata to
/// reproduce the outputs byte for byte (feed the manifest back as --config).
struct RunManifest {
    std::string command;
    KeyValueFile resolved;
    std::vector<std::string> outputs;
    double wall_clock_ms = 0.0;

    void write_atomic(const std::filesystem::path& path) const {
        KeyValueFile kv = resolved;
        kv.set("run.command", command);
        kv.set("run.tool_version", version_string);
        kv.set("run.wall_clock_ms", csv_number(wall_clock_ms));
        for (std::size_t i = 0; i < outputs.size(); ++i)
            kv.set("run.output." + std::to_string(i), outputs[i]);
        CsvTable::atomic_write(path, kv.to_string());
    }
};

}  // namespace aucboot
