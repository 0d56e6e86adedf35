#pragma once

#include <cstdlib>
#include <string>

#include "exang/presentation_io.hpp"

namespace testutil {

inline std::string fixtures_dir() {
    const char* env = std::getenv("EXANG_FIXTURES");
    return env ? env : "fixtures";
}

inline std::string oracle_dir() {
    const char* env = std::getenv("EXANG_ORACLE");
    return env ? env : "oracle";
}

inline exang::PresentationFile load(const std::string& name) {
    return exang::parse_presentation_file(fixtures_dir() + "/" + name + ".json");
}

}  // namespace testutil
