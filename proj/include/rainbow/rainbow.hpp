#pragma once

#include "algebra.hpp"
#include "augment.hpp"
#include "campaign.hpp"
#include "enumeration.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "falsify.hpp"
#include "generators.hpp"
#include "greedy.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "proof_guided.hpp"
#include "rational.hpp"
#include "solve.hpp"
#include "solver_types.hpp"
#include "switching.hpp"
#include "vertex_set.hpp"
#include "vsearch.hpp"
