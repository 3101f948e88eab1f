#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shockstab {

/// Library component an error originated in. Carried by every Error so the
/// CLI can report provenance.
enum class Module { mesh, state, numerics, residual, stability, harness, cli };

std::string_view module_name(Module m);

class Error : public std::runtime_error {
 public:
  Error(Module module, const std::string& message);

  Module module() const noexcept { return module_; }
  /// Message without the "[module] " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Module module_;
  std::string detail_;
};

}  // namespace shockstab
