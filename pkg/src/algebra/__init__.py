# Polynomial and Rational Function Arithmetic
