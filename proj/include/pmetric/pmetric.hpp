#pragma once

#include "dist.hpp"
#include "errors.hpp"
#include "space.hpp"
#include "point_map.hpp"
#include "reflection.hpp"
#include "topology.hpp"
#include "morphisms.hpp"
#include "constructions.hpp"
#include "document.hpp"
#include "fuzz.hpp"
