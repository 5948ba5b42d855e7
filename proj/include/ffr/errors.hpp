#pragma once

#include <stdexcept>
#include <string>

namespace ffr {

/// Invalid or physically unrealizable input (bad parameter ranges, negative
/// radicands beyond tolerance, out-of-range failure rates).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An internal cross-check failed (Gram condition, regime dispatch,
/// solver bracket): the library detected an inconsistency in its own results.
class consistency_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ffr
