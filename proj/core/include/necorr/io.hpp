#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "necorr/corrector.hpp"
#include "necorr/nea_format.hpp"

namespace necorr {

/// All lines of a text file, trailing '\r' removed. Throws FormatError if
/// the file cannot be opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes through a temporary sibling file and renames it into place, so a
/// failed run never leaves a truncated output behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Every non-blank line must parse; errors carry the line number.
std::vector<Reference> read_references(const std::filesystem::path& path,
                                       const FormatConfig& fmt);
std::vector<NeaHypothesis> read_hypotheses(const std::filesystem::path& path,
                                           const FormatConfig& fmt);

/// Corrected-output line: {"id", "tokens", "entity_ranges": [[begin, end), ...]}.
std::string render_corrected(const CorrectionOutcome& outcome);
/// Inverse of render_corrected. `entity_ranges` is optional; without it
/// every token counts as plain.
CorrectionOutcome parse_corrected(std::string_view line, std::size_t line_number);
std::vector<CorrectionOutcome> read_corrected(const std::filesystem::path& path);

/// Decision line: {"id", "spans": [{n, r_max, r_max_exact, k, maxi, action,
/// tie_flag}, ...]}.
std::string render_decisions(const CorrectionOutcome& outcome);

}  // namespace necorr
