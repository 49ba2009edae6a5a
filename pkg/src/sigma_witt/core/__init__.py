"""Core services: configuration, logging, errors"""
