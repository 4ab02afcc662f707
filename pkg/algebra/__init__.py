"""Finite fields, polynomial rings and the ring R_r."""
