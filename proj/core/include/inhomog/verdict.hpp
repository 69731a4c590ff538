#pragma once

#include <string>
#include <vector>

namespace inhomog {

enum class CheckStatus { pass, fail, not_applicable };

struct Verdict {
  std::string check_name;
  CheckStatus status = CheckStatus::not_applicable;
  // On failure names the first offending object; on pass may carry the
  // computed quantities that witnessed it.
  std::string detail;

  bool passed() const { return status == CheckStatus::pass; }
  bool failed() const { return status == CheckStatus::fail; }
};

inline const char* to_cstr(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::not_applicable:
      return "not-applicable";
  }
  return "?";
}

}  // namespace inhomog
