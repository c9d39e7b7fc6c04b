#pragma once

#include "fkica/errors.hpp"
#include "fkica/specmat.hpp"
#include "fkica/funbasis.hpp"
#include "fkica/whitening.hpp"
#include "fkica/kurtica.hpp"
#include "fkica/classify.hpp"
#include "fkica/picard.hpp"
#include "fkica/io.hpp"
#include "fkica/simlab.hpp"

namespace fkica {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fkica
