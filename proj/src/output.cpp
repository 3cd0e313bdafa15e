#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "run_config.hpp"

namespace fs = std::filesystem;

namespace dicke3::run {

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw numeric_error("cannot open " + tmp.string());
        out << content;
        if (!out.good()) throw numeric_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Eigen::VectorXd>& columns) {
    if (header.size() != columns.size() || columns.empty())
        throw std::invalid_argument("write_csv: header/column mismatch");
    const auto rows = columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");

    std::string body;
    body.reserve(static_cast<std::size_t>(rows) * columns.size() * 26);
    for (std::size_t c = 0; c < header.size(); ++c) {
        body += header[c];
        body += (c + 1 < header.size()) ? ',' : '\n';
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            body += format_full(columns[c](r));
            body += (c + 1 < columns.size()) ? ',' : '\n';
        }
    }
    write_text_atomic(path, body);
}

ManifestBuilder::ManifestBuilder() : start_(std::chrono::steady_clock::now()) {}

void ManifestBuilder::set_config(const std::string& key, const std::string& value) {
    config_text_[key] = value;
}
void ManifestBuilder::set_config(const std::string& key, double value) {
    config_num_[key] = value;
}
void ManifestBuilder::set_diagnostic(const std::string& key, double value) {
    diagnostics_[key] = value;
}
void ManifestBuilder::add_output(const std::string& path) { outputs_.push_back(path); }

std::string ManifestBuilder::write(const std::string& out_dir, const std::string& command) {
    for (const auto& p : outputs_)
        if (!fs::exists(p)) throw numeric_error("manifest lists missing output " + p);

    nlohmann::json doc;
    doc["command"] = command;
    doc["library_version"] = "dicke3 0.1.0";
    for (const auto& [k, v] : config_text_) doc["config"][k] = v;
    for (const auto& [k, v] : config_num_) doc["config"][k] = v;
    for (const auto& [k, v] : diagnostics_) doc["truncation_diagnostics"][k] = v;
    doc["outputs"] = outputs_;
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start_).count();
    doc["wall_clock_seconds"] = elapsed;

    const std::string path = (fs::path(out_dir) / "run_manifest.json").string();
    write_text_atomic(path, doc.dump(2) + "\n");
    return path;
}

}  // namespace dicke3::run
