"""Tests for Faultline"""
