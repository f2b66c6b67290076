/// @file morphflow.hpp
/// @brief Convenience include for the whole library.
#ifndef MORPHFLOW_MORPHFLOW_HPP
#define MORPHFLOW_MORPHFLOW_HPP

#include "morphflow/aggregation.hpp"
#include "morphflow/bem.hpp"
#include "morphflow/cache.hpp"
#include "morphflow/config.hpp"
#include "morphflow/friction.hpp"
#include "morphflow/geometry.hpp"
#include "morphflow/interp.hpp"
#include "morphflow/mesh.hpp"
#include "morphflow/optimizer.hpp"
#include "morphflow/outputs.hpp"
#include "morphflow/robot_specs.hpp"
#include "morphflow/scenarios.hpp"

#endif  // MORPHFLOW_MORPHFLOW_HPP
