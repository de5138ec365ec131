# Exact Arithmetic Core
