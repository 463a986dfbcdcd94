#pragma once

#include <stdexcept>
#include <string>

namespace tfh {

/// Two radial functions live on different grids.
struct GridError : std::runtime_error {
  explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

/// A field failed the transversality check and was not projected first.
struct TransversalityError : std::runtime_error {
  explicit TransversalityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfh
