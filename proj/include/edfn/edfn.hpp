#pragma once

#include "edfn/blowup.hpp"
#include "edfn/canonical.hpp"
#include "edfn/colored_graph.hpp"
#include "edfn/crg.hpp"
#include "edfn/distoracle.hpp"
#include "edfn/embed.hpp"
#include "edfn/enumerate.hpp"
#include "edfn/envelope.hpp"
#include "edfn/error.hpp"
#include "edfn/family.hpp"
#include "edfn/forest.hpp"
#include "edfn/graph.hpp"
#include "edfn/gvalue.hpp"
#include "edfn/linalg.hpp"
#include "edfn/order.hpp"
#include "edfn/parallel.hpp"
#include "edfn/rational.hpp"
#include "edfn/solver.hpp"
