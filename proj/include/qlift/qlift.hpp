#pragma once

#include "rational.hpp"
#include "field.hpp"
#include "chars.hpp"
#include "qseries.hpp"
#include "forms.hpp"
#include "expr.hpp"
#include "hecke.hpp"
#include "report.hpp"
#include "shimura.hpp"
#include "verify.hpp"
#include "lmfdb.hpp"
