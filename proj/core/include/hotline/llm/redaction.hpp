#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hotline::llm {

enum class SpanKind { PhoneNumber, IdNumber, PersonName, Address };

std::string placeholder_for(SpanKind kind);  // "[PHONE]", "[ID]", ...

struct Replacement {
  SpanKind kind;
  std::string placeholder;

  bool operator==(const Replacement&) const = default;
};

struct RedactionReport {
  std::string redacted_text;
  std::vector<Replacement> replacements;  // in original span order
  int count = 0;
};

/// Pattern- and list-based anonymizer applied before text leaves the local
/// environment. Deterministic by construction: phone-like digit runs (7-13
/// digits, optional single space/dash separators), national-ID-like runs
/// (15 or 18 digits, the 18th may be X), and configured name/address list
/// entries are replaced with stable placeholders; everything else is
/// preserved verbatim.
class Redactor {
 public:
  Redactor() = default;
  Redactor(std::vector<std::string> names, std::vector<std::string> addresses);

  /// Loads one entry per line from each list file; empty path means an
  /// empty list.
  static Redactor from_files(const std::string& name_list_path,
                             const std::string& address_list_path);

  RedactionReport redact(std::string_view text) const;

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& addresses() const { return addresses_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> addresses_;
};

}  // namespace hotline::llm
