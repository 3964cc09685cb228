#include "mpst/runtime/host.hpp"

#include <dlfcn.h>

#include <atomic>
#include <memory>

namespace mpst::runtime {

HostRegistry builtin_registry() {
  HostRegistry reg;
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  reg.add("next", {Sort::unit(), Sort::nat()}, [counter](const Value&) { return Value::nat(counter->fetch_add(1)); });
  reg.add("compute", {Sort::nat(), Sort::nat()}, [](const Value& v) {
    return Value::nat(v.as_nat() > kNatMax / 2 ? kNatMax : v.as_nat() * 2);
  });
  reg.add("log", {Sort::nat(), Sort::unit()}, [](const Value&) { return Value::unit(); });
  return reg;
}

Status<RuntimeError> load_extern_library(const std::string& path, HostRegistry& reg) {
  void* h = ::dlopen(path.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (!h) return unexpected(RuntimeError{RuntimeError::Kind::RegistryMissing, std::string("dlopen: ") + ::dlerror()});
  using RegisterFn = void (*)(HostRegistry&);
  auto fn = reinterpret_cast<RegisterFn>(::dlsym(h, "mpst_register_externs"));
  if (!fn)
    return unexpected(
        RuntimeError{RuntimeError::Kind::RegistryMissing, path + " does not export mpst_register_externs"});
  fn(reg);
  return Ok{};
}

}  // namespace mpst::runtime
