#include "privwit/version.hpp"

#ifndef PRIVWIT_VERSION
#define PRIVWIT_VERSION "0.0.0"
#endif

namespace privwit {

const char* version() { return PRIVWIT_VERSION; }

}  // namespace privwit
