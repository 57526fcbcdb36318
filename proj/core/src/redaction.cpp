#include "hotline/llm/redaction.hpp"

#include <algorithm>
#include <fstream>

#include "hotline/errors.hpp"

namespace hotline::llm {

namespace {

struct Span {
  std::size_t begin;
  std::size_t end;
  SpanKind kind;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_sep(char c) { return c == ' ' || c == '-'; }

// Scans maximal digit runs (with optional single separators between digits)
// and classifies them: separator-free runs of 15 or 18 digits (the 18th may
// be X) are ID-like, runs of 7-13 digits are phone-like.
void scan_numeric_spans(std::string_view text, std::vector<Span>& spans) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    std::size_t digits = 0;
    std::size_t seps = 0;
    std::size_t end = i;
    while (end < text.size()) {
      if (is_digit(text[end])) {
        ++digits;
        ++end;
      } else if (is_sep(text[end]) && end + 1 < text.size() &&
                 is_digit(text[end + 1])) {
        ++seps;
        ++end;
      } else {
        break;
      }
    }

    if (seps == 0 && digits == 17 && end < text.size() &&
        (text[end] == 'X' || text[end] == 'x')) {
      spans.push_back({begin, end + 1, SpanKind::IdNumber});
      ++end;
    } else if (seps == 0 && (digits == 15 || digits == 18)) {
      spans.push_back({begin, end, SpanKind::IdNumber});
    } else if (digits >= 7 && digits <= 13) {
      spans.push_back({begin, end, SpanKind::PhoneNumber});
    }
    i = end;  // end > begin: at least one digit was consumed
  }
}

void scan_list_spans(std::string_view text,
                     const std::vector<std::string>& entries, SpanKind kind,
                     std::vector<Span>& spans) {
  for (const auto& entry : entries) {
    if (entry.empty()) continue;
    std::size_t pos = 0;
    while ((pos = text.find(entry, pos)) != std::string_view::npos) {
      spans.push_back({pos, pos + entry.size(), kind});
      pos += entry.size();
    }
  }
}

std::vector<std::string> load_list(const std::string& path) {
  std::vector<std::string> entries;
  if (path.empty()) return entries;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open list file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (!line.empty()) entries.push_back(line);
  }
  return entries;
}

}  // namespace

std::string placeholder_for(SpanKind kind) {
  switch (kind) {
    case SpanKind::PhoneNumber: return "[PHONE]";
    case SpanKind::IdNumber: return "[ID]";
    case SpanKind::PersonName: return "[NAME]";
    case SpanKind::Address: return "[ADDR]";
  }
  return "[REDACTED]";
}

Redactor::Redactor(std::vector<std::string> names,
                   std::vector<std::string> addresses)
    : names_(std::move(names)), addresses_(std::move(addresses)) {}

Redactor Redactor::from_files(const std::string& name_list_path,
                              const std::string& address_list_path) {
  return Redactor(load_list(name_list_path), load_list(address_list_path));
}

RedactionReport Redactor::redact(std::string_view text) const {
  std::vector<Span> spans;
  scan_numeric_spans(text, spans);
  scan_list_spans(text, names_, SpanKind::PersonName, spans);
  scan_list_spans(text, addresses_, SpanKind::Address, spans);

  // Earlier start wins; at equal start the longer span wins. Overlapping
  // later spans are dropped.
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.end > b.end;
  });

  RedactionReport report;
  std::size_t cursor = 0;
  for (const auto& span : spans) {
    if (span.begin < cursor) continue;
    report.redacted_text.append(text.substr(cursor, span.begin - cursor));
    report.redacted_text.append(placeholder_for(span.kind));
    report.replacements.push_back({span.kind, placeholder_for(span.kind)});
    cursor = span.end;
  }
  report.redacted_text.append(text.substr(cursor));
  report.count = static_cast<int>(report.replacements.size());
  return report;
}

}  // namespace hotline::llm
