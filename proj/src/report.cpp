#include "kh/report.hpp"

namespace kh {
}  // namespace kh
