package org.mathutil;

public class Formatter {
    private char fill = ' ';

    public String pad(int width, String text) {
        StringBuilder sb = new StringBuilder();
        for (int i = text.length(); i < width; i++) {
            sb.append(fill);
        }
        return sb.append(text).toString();
    }
}
