#pragma once

#include "ffg/errors.hpp"
#include "ffg/jacobi_trudi.hpp"
#include "ffg/json_io.hpp"
#include "ffg/permutation.hpp"
#include "ffg/polynomial.hpp"
#include "ffg/series.hpp"
#include "ffg/tableaux.hpp"
#include "ffg/verify.hpp"
