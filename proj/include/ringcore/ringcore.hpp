#ifndef RINGCORE_RINGCORE_HPP
#define RINGCORE_RINGCORE_HPP

#include "ringcore/assignment.hpp"
#include "ringcore/bicriteria.hpp"
#include "ringcore/common.hpp"
#include "ringcore/composer.hpp"
#include "ringcore/cost.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/oracle.hpp"
#include "ringcore/point_set.hpp"
#include "ringcore/ring_coreset.hpp"
#include "ringcore/ring_decomp.hpp"
#include "ringcore/transport.hpp"

#endif  // RINGCORE_RINGCORE_HPP
