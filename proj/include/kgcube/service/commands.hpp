#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace kgcube::service {

// CLI verbs. Each returns the process exit status and writes its output to
// `out` and diagnostics to `err`.

// Runs the pipeline; prints the PhaseReport JSON. On failure the failing phase goes to `err`.
// A non-empty `output` replaces the configured dump path; staging moves next to it.
int cmd_etl(const std::filesystem::path& config, std::ostream& out, std::ostream& err,
            const std::filesystem::path& output = {});

// Validates a TBox (or a dump containing one); prints the violations.
int cmd_validate(const std::filesystem::path& tbox, std::ostream& out, std::ostream& err);

enum class QueryOutput { Csv, Json, Sparql };

int cmd_query(const std::filesystem::path& dump, const std::filesystem::path& query, QueryOutput format,
              std::ostream& out, std::ostream& err);

int cmd_stats(const std::filesystem::path& dump, bool as_json, std::ostream& out, std::ostream& err);

// Blocks serving HTTP until the process is stopped.
int cmd_serve(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

}  // namespace kgcube::service
