#include "nlwrad/core/grid.hpp"

namespace nlwrad {

template class BasicRadialGrid<double>;

}  // namespace nlwrad
