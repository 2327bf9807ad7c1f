#pragma once

#include <string>

#include "dragfield/grid.hpp"

namespace dragfield::detail {

inline void require_handle_in_mask(const Mask& mask, Point handle, const char* op) {
  const Cell c = cell_of(handle);
  if (!mask.contains(c)) {
    throw ValidationError(std::string(op) + ": handle (" + std::to_string(handle.x) + ", " +
                          std::to_string(handle.y) + ") is outside the image");
  }
  if (!mask.test(c)) {
    throw ValidationError(std::string(op) + ": handle (" + std::to_string(handle.x) + ", " +
                          std::to_string(handle.y) + ") is outside the mask");
  }
}

template <class A, class B>
void require_same_shape(const A& a, const B& b, const char* op) {
  if (!a.same_shape(b)) throw ValidationError(std::string(op) + ": dimension mismatch");
}

}  // namespace dragfield::detail
