#pragma once

#include "sepdual/error.hpp"
#include "sepdual/vertex_set.hpp"
#include "sepdual/sep_set.hpp"
#include "sepdual/sepsys.hpp"
#include "sepdual/families.hpp"
#include "sepdual/sgraph.hpp"
#include "sepdual/engine.hpp"
#include "sepdual/graphsep.hpp"
#include "sepdual/io.hpp"
