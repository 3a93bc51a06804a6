from setuptools import setup, find_packages

setup(
    name="atomech",
    version="0.1.0",
    package_dir={"": "app"},
    packages=find_packages("app"),
    package_data={"atomech": ["configs/*.toml", "schemas/*.json", "governance/reference/*.yaml"]},
)
