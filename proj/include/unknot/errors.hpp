#pragma once

#include <stdexcept>
#include <string>

namespace unknot {

/// Base class for every error raised by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct dimension_error : error {
  using error::error;
};

struct singular_form_error : error {
  using error::error;
};

/// A matrix violated a mod-2 (or mod-4) requirement.
struct parity_error : error {
  using error::error;
};

struct not_symmetric_error : error {
  using error::error;
};

struct invalid_diagram_error : error {
  using error::error;
};

struct invalid_parameters_error : error {
  using error::error;
};

struct unsupported_error : error {
  using error::error;
};

struct parse_error : error {
  using error::error;
};

}  // namespace unknot
