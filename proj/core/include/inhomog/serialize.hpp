#pragma once

#include <string>

#include "inhomog/covering.hpp"
#include "inhomog/psi.hpp"

namespace inhomog {

// Line-oriented text form, one record per line, canonical rational tokens.
// Certified norm bounds recorded during search are advisory and do not
// serialize; everything else round-trips, which "equivalent" below checks.
std::string serialize(const Certificate& cert);
Certificate parse_certificate(const std::string& text);  // throws ParseError

std::string serialize(const CoverPlan& plan);
CoverPlan parse_cover_plan(const std::string& text);  // throws ParseError

// Field-for-field comparison ignoring the advisory norm bounds.
bool equivalent(const Certificate& a, const Certificate& b);
bool equivalent(const CoverPlan& a, const CoverPlan& b);

}  // namespace inhomog
