// zeno.hpp - Umbrella header

#pragma once

#include "zeno/analysis.hpp"
#include "zeno/app.hpp"
#include "zeno/bath.hpp"
#include "zeno/collision.hpp"
#include "zeno/config.hpp"
#include "zeno/csv.hpp"
#include "zeno/eigen_symmetric.hpp"
#include "zeno/errors.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/model.hpp"
#include "zeno/reduced_state.hpp"
