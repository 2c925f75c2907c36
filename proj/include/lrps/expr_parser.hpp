#pragma once

#include <string_view>

#include "lrps/spatial_expr.hpp"

namespace lrps {

/// Parses the problem-file expression syntax (see docs/expression-grammar.md).
/// Variables beyond `dimension` raise Error(DimensionError); everything else
/// malformed raises Error(SchemaError).
Expr parse_expr(std::string_view text, int dimension = kMaxDimension);

}  // namespace lrps
