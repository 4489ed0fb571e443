#ifndef XPROD_RUN_HPP
#define XPROD_RUN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xprod/document.hpp"

namespace xprod {

struct RunOptions {
  std::string dataset;                 // empty: the document's only dataset
  std::string condition;               // check: a single condition label
  std::optional<std::uint64_t> seed;   // search: overrides the dataset's seed
  bool force = false;                  // build: skip the condition check
  unsigned threads = 1;                // never changes the report
};

struct RunResult {
  int exit_code = 0;   // 0 pass, 1 axiom failure, 2 input error
  std::string report;  // canonical JSON, trailing newline
};

const std::vector<std::string>& commands();

/// check | build | agree | extract | universal | search | transport.
RunResult run(const std::string& command, const Document& doc, const RunOptions& options);

/// Parses `text` first; parse errors become an exit-2 report.
RunResult run_text(const std::string& command, std::string_view text, const RunOptions& options);

}  // namespace xprod

#endif  // XPROD_RUN_HPP
