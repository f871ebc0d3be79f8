#pragma once

#include "coxeter/error.hpp"
#include "coxeter/matrix.hpp"
#include "coxeter/classification.hpp"
#include "coxeter/verdict.hpp"
#include "coxeter/word.hpp"
#include "coxeter/brute_force.hpp"
#include "coxeter/boundary.hpp"
#include "coxeter/catalog.hpp"
#include "coxeter/report.hpp"
#include "coxeter/render.hpp"
