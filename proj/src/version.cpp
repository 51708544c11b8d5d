#include "fay/version.hpp"

namespace fay {
const char* version() { return "0.1.0"; }
const char* report_schema_version() { return "fay-report/1"; }
}  // namespace fay
