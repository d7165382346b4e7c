#include "necorr/io.hpp"

#include <fstream>

#include "json.hpp"
#include "necorr/error.hpp"

namespace necorr {

using json = nlohmann::json;

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw FormatError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

std::vector<Reference> read_references(const std::filesystem::path& path,
                                       const FormatConfig& fmt) {
  auto format = infer_line_format(path);
  std::vector<Reference> refs;
  auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    try {
      refs.push_back(parse_reference(lines[i], i + 1, format, fmt));
    } catch (const MalformedSpan& e) {
      throw FormatError(e.what(), i + 1);
    }
  }
  return refs;
}

std::vector<NeaHypothesis> read_hypotheses(const std::filesystem::path& path,
                                           const FormatConfig& fmt) {
  auto format = infer_line_format(path);
  std::vector<NeaHypothesis> hyps;
  auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    try {
      hyps.push_back(parse_hypothesis(lines[i], i + 1, format, fmt));
    } catch (const MalformedSpan& e) {
      throw FormatError(e.what(), i + 1);
    }
  }
  return hyps;
}

std::string render_corrected(const CorrectionOutcome& outcome) {
  json ranges = json::array();
  for (std::size_t i = 0; i < outcome.owner.size();) {
    if (outcome.owner[i] == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < outcome.owner.size() && outcome.owner[j] == outcome.owner[i]) ++j;
    ranges.push_back({i, j});
    i = j;
  }
  json obj = {{"id", outcome.id},
              {"tokens", outcome.corrected},
              {"entity_ranges", ranges}};
  return obj.dump();
}

CorrectionOutcome parse_corrected(std::string_view line, std::size_t line_number) {
  CorrectionOutcome out;
  try {
    auto obj = json::parse(line);
    const auto& id = obj.at("id");
    out.id = id.is_string() ? id.get<std::string>()
                            : std::to_string(id.get<long long>());
    out.corrected = obj.at("tokens").get<TokenSeq>();
    out.owner.assign(out.corrected.size(), 0);
    if (auto it = obj.find("entity_ranges"); it != obj.end()) {
      std::size_t n = 0;
      for (const auto& r : *it) {
        auto begin = r.at(0).get<std::size_t>();
        auto end = r.at(1).get<std::size_t>();
        if (begin >= end || end > out.corrected.size())
          throw FormatError("entity range out of bounds", line_number);
        ++n;
        for (auto k = begin; k < end; ++k) out.owner[k] = n;
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad corrected line: ") + e.what(), line_number);
  }
  return out;
}

std::vector<CorrectionOutcome> read_corrected(const std::filesystem::path& path) {
  std::vector<CorrectionOutcome> out;
  auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    out.push_back(parse_corrected(lines[i], i + 1));
  }
  return out;
}

std::string render_decisions(const CorrectionOutcome& outcome) {
  json spans = json::array();
  for (const auto& d : outcome.decisions) {
    json s = {{"n", d.span_index},
              {"r_max", d.r_max.value()},
              {"r_max_exact", d.r_max.ratio().to_string()},
              {"k", d.r_max.matched},
              {"maxi", d.maxi ? json(*d.maxi) : json(nullptr)},
              {"action", to_string(d.action)},
              {"tie_flag", d.tie}};
    spans.push_back(std::move(s));
  }
  json obj = {{"id", outcome.id}, {"spans", spans}};
  return obj.dump();
}

}  // namespace necorr
