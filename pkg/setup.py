from setuptools import find_packages, setup

setup(
    name="wittenzeta",
    version="0.1.0",
    license="MIT",
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.11.0",
    install_requires=[
        "typer>=0.12.0",
        "rich>=13.7.0",
        "jinja2>=3.1.0",
        "mpmath>=1.3.0",
        "sympy>=1.12",
    ],
    extras_require={
        "test": ["pytest>=8.0"],
    },
    entry_points={
        "console_scripts": [
            "wittenzeta=wittenzeta.main:main",
        ]
    },
    include_package_data=True,
)
