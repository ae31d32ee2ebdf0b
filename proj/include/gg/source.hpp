#pragma once

#include <string>

namespace gg {

/// 1-based, inclusive-start location range within a named input.
struct SourceSpan {
    std::string file;
    int startLine = 0;
    int startCol = 0;
    int endLine = 0;
    int endCol = 0;

    bool known() const { return startLine > 0; }
};

/// Renders the `FILE:LINE:COL` prefix used by every diagnostic.
std::string formatLocation(const SourceSpan &span);

} // namespace gg
