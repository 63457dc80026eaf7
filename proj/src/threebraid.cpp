#include "kh/threebraid.hpp"

namespace kh {
}  // namespace kh
