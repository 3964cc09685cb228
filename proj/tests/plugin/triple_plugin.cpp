// Host functions for the --extern tests. Symbols of the runtime are resolved
// against the loading executable.
#include "mpst/runtime/endpoint.hpp"

extern "C" void mpst_register_externs(mpst::runtime::HostRegistry& reg) {
  reg.add("triple", mpst::ExternSig{mpst::Sort::nat(), mpst::Sort::nat()},
          [](const mpst::Value& v) { return mpst::Value::nat(v.as_nat() * 3); });
}
