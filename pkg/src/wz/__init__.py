# WZ Pair Engine
