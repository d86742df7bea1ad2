"""Computational core: Frame shapes, Seifert data, monodromy, McKay matrices and the catalog."""
