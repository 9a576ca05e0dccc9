package org.zoo;

public interface Shape {
    double area();
}
