#pragma once

namespace inexact {

inline constexpr const char* artifact_version = "0.1.0";

}
