#pragma once

#include <string>

#include "mpst/runtime/endpoint.hpp"

namespace mpst::runtime {

// Host functions available without a plugin:
//   next    : unit -> nat   counts 0, 1, 2, ... per registry
//   compute : nat -> nat    doubles its argument
//   log     : nat -> unit   records the call only
HostRegistry builtin_registry();

// Loads a shared library exporting
//   extern "C" void mpst_register_externs(mpst::runtime::HostRegistry&);
// and lets it add functions to `reg`. The library stays loaded.
Status<RuntimeError> load_extern_library(const std::string& path, HostRegistry& reg);

}  // namespace mpst::runtime
