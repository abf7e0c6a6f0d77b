# Ramanujan Verify Test Suite
