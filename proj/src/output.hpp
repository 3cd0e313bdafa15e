// output.hpp — CSV and manifest writing. Files are written to a temporary
// path and renamed into place; numbers carry full double precision.

#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <map>
#include <string>
#include <vector>

namespace dicke3::run {

std::string format_full(double v);

// One CSV with a single header line; columns given as (name, values) pairs.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Eigen::VectorXd>& columns);

void write_text_atomic(const std::string& path, const std::string& content);

// Collects what a run produced; serialized as the run manifest (JSON).
class ManifestBuilder {
public:
    ManifestBuilder();

    void set_config(const std::string& key, const std::string& value);
    void set_config(const std::string& key, double value);
    void set_diagnostic(const std::string& key, double value);
    void add_output(const std::string& path);
    // writes <out_dir>/run_manifest.json; every listed output must exist
    std::string write(const std::string& out_dir, const std::string& command);

private:
    std::map<std::string, std::string> config_text_;
    std::map<std::string, double> config_num_;
    std::map<std::string, double> diagnostics_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace dicke3::run
