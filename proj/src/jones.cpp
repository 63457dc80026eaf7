#include "kh/jones.hpp"

namespace kh {
}  // namespace kh
