#pragma once

namespace privwit {

// Library version string ("major.minor.patch"), stamped into CSV metadata
// headers and the CLI --version output.
const char* version();

}  // namespace privwit
