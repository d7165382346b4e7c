#include "necorr/similarity.hpp"

#include <string>

#include "necorr/error.hpp"

namespace necorr::detail {

void throw_oracle_size(std::size_t total) {
  throw SizeLimitExceeded("oracle_similarity: total length " +
                          std::to_string(total) + " exceeds " +
                          std::to_string(kOracleMaxTotalLength));
}

}  // namespace necorr::detail
