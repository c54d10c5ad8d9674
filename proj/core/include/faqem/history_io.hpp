// Line-oriented collapse-history dump, one record per line:
//   kept removed kx ky kz rx ry rz nx ny nz
// Indices are in the original mesh numbering; positions are the kept and
// removed endpoints before the collapse and the placed vertex after.
#pragma once

#include <string>

#include "faqem/simplify.hpp"

namespace faqem {

void save_history(const CollapseHistory& history, const std::string& path);

// Parses a dump back into records. Face lists are not part of the text
// format, so loaded records carry the collapse positions only — enough
// for appearance transfer and external debugging.
CollapseHistory load_history(const std::string& path);

}  // namespace faqem
