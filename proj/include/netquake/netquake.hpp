#pragma once

#include "netquake/attack.hpp"
#include "netquake/centrality.hpp"
#include "netquake/graph.hpp"
#include "netquake/io.hpp"
#include "netquake/netgen.hpp"
#include "netquake/qre.hpp"
#include "netquake/record.hpp"
