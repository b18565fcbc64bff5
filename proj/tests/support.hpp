#pragma once

#include <doctest.h>

#include "groupcausal/error.hpp"

namespace support {

inline groupcausal::ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const groupcausal::Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return groupcausal::ErrorCode::InvalidArgument;
}

}  // namespace support
