#pragma once

#include <string>
#include <vector>

#include "mpst/frontend/syntax.hpp"

namespace mpst::testing {

std::string corpus_path(const std::string& name);
std::string read_corpus(const std::string& name);
// Throw std::runtime_error with the diagnostics when parsing fails.
GlobalType corpus_global(const std::string& name);
frontend::ProcFile corpus_proc(const std::string& name);
GlobalType global_of(const std::string& text);
LocalType local_of(const std::string& text);
Proc proc_of(const std::string& text);

// The projectable protocols of the corpus.
const std::vector<std::string>& corpus_protocols();
// Every file in the corpus directory.
std::vector<std::string> corpus_files();

}  // namespace mpst::testing
