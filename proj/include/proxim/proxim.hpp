#pragma once

#include "proxim/distance.hpp"
#include "proxim/errors.hpp"
#include "proxim/gallery.hpp"
#include "proxim/gauge.hpp"
#include "proxim/instance_io.hpp"
#include "proxim/maps.hpp"
#include "proxim/norm.hpp"
#include "proxim/point.hpp"
#include "proxim/properties.hpp"
#include "proxim/report.hpp"
#include "proxim/sampling.hpp"
#include "proxim/sets.hpp"
#include "proxim/solver.hpp"
#include "proxim/verify.hpp"
