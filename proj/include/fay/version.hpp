#pragma once

namespace fay {
const char* version();
const char* report_schema_version();
}  // namespace fay
