#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dragfield/grid.hpp"

namespace dragfield {

struct DragPair {
  Point handle;
  Point target;

  /// d = target - handle.
  Point drag() const { return target - handle; }
};

using DragSet = std::vector<DragPair>;

/// Parses `[{"handle":[x,y],"target":[x,y]}, ...]`. Throws ValidationError
/// on malformed input.
DragSet parse_drag_pairs(std::string_view json_text);
DragSet load_drag_pairs(const std::filesystem::path& path);
std::string format_drag_pairs(const DragSet& pairs);

}  // namespace dragfield
