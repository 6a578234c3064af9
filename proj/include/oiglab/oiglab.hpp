#pragma once

#include "oiglab/classes.hpp"
#include "oiglab/config.hpp"
#include "oiglab/error.hpp"
#include "oiglab/flow.hpp"
#include "oiglab/hall.hpp"
#include "oiglab/io.hpp"
#include "oiglab/kcore.hpp"
#include "oiglab/maxent.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"
#include "oiglab/parallel.hpp"
#include "oiglab/rational.hpp"
#include "oiglab/transduct.hpp"
