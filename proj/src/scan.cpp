#include "kh/scan.hpp"

namespace kh {
}  // namespace kh
