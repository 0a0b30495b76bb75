#pragma once

#include "lwb/error.hpp"
#include "lwb/signature.hpp"
#include "lwb/formula.hpp"
#include "lwb/parse.hpp"
#include "lwb/morphism.hpp"
#include "lwb/enumerate.hpp"
#include "lwb/algebra.hpp"
#include "lwb/quasivariety.hpp"
#include "lwb/matrix.hpp"
#include "lwb/valuations.hpp"
#include "lwb/consequence.hpp"
#include "lwb/ipc.hpp"
#include "lwb/report.hpp"
#include "lwb/checks.hpp"
#include "lwb/algebraization.hpp"
#include "lwb/representation.hpp"
#include "lwb/catalogs.hpp"
#include "lwb/workbench.hpp"
#include "lwb/suites.hpp"
