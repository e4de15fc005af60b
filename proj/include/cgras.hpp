#pragma once

#include "cgras/bounds.hpp"
#include "cgras/chain_graph.hpp"
#include "cgras/common.hpp"
#include "cgras/fixtures.hpp"
#include "cgras/info_algebra.hpp"
#include "cgras/linear.hpp"
#include "cgras/lp.hpp"
#include "cgras/network.hpp"
#include "cgras/numeric.hpp"
#include "cgras/pipeline.hpp"
#include "cgras/polyhedra.hpp"
#include "cgras/rate.hpp"
#include "cgras/rational.hpp"
#include "cgras/rv.hpp"
#include "cgras/scheme_io.hpp"
