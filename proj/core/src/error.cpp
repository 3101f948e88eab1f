#include "shockstab/error.hpp"

namespace shockstab {

std::string_view module_name(Module m) {
  switch (m) {
    case Module::mesh: return "mesh";
    case Module::state: return "state";
    case Module::numerics: return "numerics";
    case Module::residual: return "residual";
    case Module::stability: return "stability";
    case Module::harness: return "harness";
    case Module::cli: return "cli";
  }
  return "unknown";
}

Error::Error(Module module, const std::string& message)
    : std::runtime_error("[" + std::string(module_name(module)) + "] " + message),
      module_(module),
      detail_(message) {}

}  // namespace shockstab
